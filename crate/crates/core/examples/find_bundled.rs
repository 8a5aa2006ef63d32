//! Searches for an instance that breaks all three embedders and writes it to
//! the directory given as the first argument (default `assets/bundled`).

use std::path::PathBuf;

use levelplan::format::{write_lgf, write_rpf};
use levelplan::lab::{find_bundled, BundledSearch};

const HEADER: &str =
    "# Level-planar instance on which all three simple embedders fail. Regenerate with\n\
# `cargo run --release -p levelplan --example find_bundled`.\n";

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "assets/bundled".into()),
    );
    let mut search = BundledSearch::default();
    if let Some(seed) = std::env::args().nth(2) {
        search.generator.seed = seed.parse().expect("seed");
    }
    let Some(found) = find_bundled(&search) else {
        eprintln!("nothing found");
        std::process::exit(1);
    };
    std::fs::create_dir_all(&dir)?;
    std::fs::write(
        dir.join("graph.lgf"),
        format!("{HEADER}{}", write_lgf(&found.graph.to_level_graph())),
    )?;
    std::fs::write(
        dir.join("randerath.rpf"),
        format!("{HEADER}{}", write_rpf(&found.randerath)),
    )?;
    std::fs::write(
        dir.join("healy-kuusik.rpf"),
        format!("{HEADER}{}", write_rpf(&found.healy_kuusik)),
    )?;
    std::fs::write(
        dir.join("harrigan-healy.rpf"),
        format!("{HEADER}{}", write_rpf(&found.harrigan_healy)),
    )?;
    println!(
        "{} vertices, {} edges written to {}",
        found.graph.vertex_count(),
        found.graph.edge_count(),
        dir.display()
    );
    Ok(())
}
