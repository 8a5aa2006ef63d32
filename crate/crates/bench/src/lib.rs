//! Benchmark fixtures.

use levelplan::oracle::{random_proper_graph, GeneratorConfig};
use levelplan::{satisfiable, ProperLevelGraph};

/// Level-planar random graphs of the given width, `count` of them, from a
/// fixed seed.
pub fn planar_graphs(levels: u32, width: usize, count: usize) -> Vec<ProperLevelGraph> {
    (0u64..)
        .map(|seed| {
            random_proper_graph(&GeneratorConfig {
                levels: levels..=levels,
                width: width..=width,
                edge_probability: 0.3,
                seed,
            })
            .expect("valid generator config")
        })
        .filter(satisfiable)
        .take(count)
        .collect()
}
