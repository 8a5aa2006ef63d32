//! `levelplan` command-line tool.
//!
//! Exit codes: 0 success or planar, 1 not planar / embedding failed /
//! crossings found, 2 usage error, 3 malformed input, 4 oracle budget
//! exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use levelplan::drawing::{count_crossings, crossing_pairs};
use levelplan::format::{
    parse_ldf, parse_lgf, parse_rpf, write_ldf, write_lgf, write_rpf, Algo, Replay,
};
use levelplan::lab::{
    bundled_counterexample, fuzz, random_replay, read_report_dir, report_dir_name, shrink,
    write_report_dir, FuzzConfig, LabError, Target,
};
use levelplan::oracle::{
    brute_force_test_with_budget, GeneratorConfig, OracleError, DEFAULT_BUDGET,
};
use levelplan::render::{render_svg, RenderOptions};
use levelplan::vegraph::{
    build_ve_graph, harrigan_healy_embed, healy_kuusik_embed, label_ve_graph, odd_cycle_test,
};
use levelplan::{
    greedy_embed, make_proper, satisfiable, CycleVerdict, Drawing, EmbedError, EmbedOutcome,
    ProperLevelGraph,
};

#[derive(Parser)]
#[command(
    name = "levelplan",
    version,
    about = "Level planarity testing, embedding and fuzzing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckAlgo {
    Oracle,
    Satcheck,
    VegraphTest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmbedAlgo {
    Oracle,
    /// Not an embedder; accepted only to report a clear error.
    Satcheck,
    /// Not an embedder; accepted only to report a clear error.
    VegraphTest,
    Randerath,
    HealyKuusik,
    HarriganHealy,
}

impl EmbedAlgo {
    fn embedder(self) -> Result<Option<Algo>, CliError> {
        match self {
            EmbedAlgo::Oracle => Ok(None),
            EmbedAlgo::Satcheck | EmbedAlgo::VegraphTest => Err(CliError::Usage(
                "satcheck and vegraph-test only decide planarity; use `check`".into(),
            )),
            EmbedAlgo::Randerath => Ok(Some(Algo::Randerath)),
            EmbedAlgo::HealyKuusik => Ok(Some(Algo::HealyKuusik)),
            EmbedAlgo::HarriganHealy => Ok(Some(Algo::HarriganHealy)),
        }
    }
}

#[derive(clap::Args)]
struct EmbedArgs {
    #[arg(long, value_enum, default_value = "oracle")]
    algo: EmbedAlgo,
    /// Replay file pinning every choice of the embedder.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Use random choices derived from this seed instead of the canonical ones.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide level planarity.
    Check {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "oracle")]
        algo: CheckAlgo,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Compute a drawing; prints LDF or the failure.
    Embed {
        graph: PathBuf,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the number of crossings of a drawing.
    Verify { graph: PathBuf, drawing: PathBuf },
    /// Subdivide long edges.
    Properize {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a differential campaign and write one directory per failure.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        iterations: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_levels: u32,
        #[arg(long, default_value_t = 5)]
        max_width: usize,
        #[arg(long, default_value_t = 0.35)]
        edge_probability: f64,
        /// Restrict to these targets (repeatable).
        #[arg(long = "target")]
        targets: Vec<Target>,
        #[arg(long)]
        shrink: bool,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(short, long, default_value = "reports")]
        output: PathBuf,
    },
    /// Minimize a failure report directory.
    Shrink {
        report: PathBuf,
        /// Defaults to overwriting the input directory.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write an SVG of a drawing, or of an embedder's output.
    Render {
        graph: PathBuf,
        /// Drawing to render; without it, the embedder's output is used.
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        no_labels: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Export the bundled counterexample (graph.lgf and one replay per embedder).
    Bundled { dir: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("oracle budget of {0} extensions exceeded")]
    Budget(u64),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Input(_) | CliError::Io(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded(b) => CliError::Budget(b),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Irreproducible(_) => CliError::Failed(e.to_string()),
            LabError::Oracle(e) => e.into(),
            LabError::Io(e) => CliError::Io(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<ProperLevelGraph, CliError> {
    let g =
        parse_lgf(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    make_proper(&g).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_drawing(path: &Path) -> Result<Drawing, CliError> {
    parse_ldf(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_replay(path: &Path) -> Result<Replay, CliError> {
    parse_rpf(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn cmd_check(graph: &Path, algo: CheckAlgo, budget: u64) -> Result<(), CliError> {
    let g = load_graph(graph)?;
    let planar = match algo {
        CheckAlgo::Oracle => brute_force_test_with_budget(&g, budget)?.planar,
        CheckAlgo::Satcheck => satisfiable(&g),
        CheckAlgo::VegraphTest => {
            let lve = label_ve_graph(&g, &build_ve_graph(&g), &Drawing::canonical(&g))
                .expect("canonical drawing matches its graph");
            odd_cycle_test(&lve) == CycleVerdict::Consistent
        }
    };
    if planar {
        println!("planar");
        Ok(())
    } else {
        println!("not planar");
        Err(CliError::Failed(String::new()))
    }
}

/// Runs the selected embedder. `Ok` carries a drawing that may still have
/// crossings (two-pass embedder).
fn embed(g: &ProperLevelGraph, args: &EmbedArgs) -> Result<Drawing, CliError> {
    let Some(algo) = args.algo.embedder()? else {
        if args.replay.is_some() || args.seed.is_some() {
            return Err(CliError::Usage("the oracle takes no replay or seed".into()));
        }
        return brute_force_test_with_budget(g, args.budget)?
            .witness
            .ok_or_else(|| CliError::Failed("not planar".into()));
    };
    let replay = match (&args.replay, args.seed) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("--replay and --seed are exclusive".into()))
        }
        (Some(path), None) => {
            let r = load_replay(path)?;
            if r.algo != algo {
                return Err(CliError::Usage(format!(
                    "replay is for {}, not {algo}",
                    r.algo
                )));
            }
            r
        }
        (None, Some(seed)) => {
            if !satisfiable(g) {
                return Err(CliError::Failed(
                    "not planar: constraint system is contradictory".into(),
                ));
            }
            random_replay(g, algo, seed)
        }
        (None, None) => Replay::new(algo),
    };
    let reference = replay
        .reference
        .clone()
        .unwrap_or_else(|| Drawing::canonical(g));
    let result = match algo {
        Algo::Randerath => greedy_embed(g, &replay.policy()),
        Algo::HealyKuusik => healy_kuusik_embed(g, &reference, &replay.policy()),
        Algo::HarriganHealy => {
            harrigan_healy_embed(g, &reference, &replay.choices()).map(EmbedOutcome::Success)
        }
    };
    match result {
        Ok(EmbedOutcome::Success(d)) => Ok(d),
        Ok(EmbedOutcome::Contradiction(trace)) => Err(CliError::Failed(format!(
            "{algo} failed: contradiction\n{trace}"
        ))),
        Err(e @ (EmbedError::Unsatisfiable | EmbedError::OddCycle)) => {
            Err(CliError::Failed(format!("not planar: {e}")))
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn crossing_report(g: &ProperLevelGraph, d: &Drawing) -> Option<String> {
    let pairs = crossing_pairs(g, d).expect("embedder output matches its graph");
    if pairs.is_empty() {
        return None;
    }
    let edges = g.edges();
    let name = |i: usize| format!("{}-{}", g.id(edges[i].0), g.id(edges[i].1));
    let mut out = format!("crossings found: {}", pairs.len());
    for (i, j) in pairs {
        out.push_str(&format!("\ncrossing {} x {}", name(i), name(j)));
    }
    Some(out)
}

fn cmd_embed(graph: &Path, args: &EmbedArgs, output: Option<&Path>) -> Result<(), CliError> {
    let g = load_graph(graph)?;
    let d = match embed(&g, args) {
        Ok(d) => d,
        Err(CliError::Failed(msg)) => {
            println!("{msg}");
            return Err(CliError::Failed(String::new()));
        }
        Err(e) => return Err(e),
    };
    write(output, &write_ldf(&d))?;
    match crossing_report(&g, &d) {
        Some(report) => Err(CliError::Failed(report)),
        None => Ok(()),
    }
}

fn cmd_verify(graph: &Path, drawing: &Path) -> Result<(), CliError> {
    let g = load_graph(graph)?;
    let d = load_drawing(drawing)?;
    let n = count_crossings(&g, &d)
        .map_err(|e| CliError::Input(format!("{}: {e}", drawing.display())))?;
    println!("{n}");
    if n == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(String::new()))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    iterations: u64,
    seed: u64,
    max_levels: u32,
    max_width: usize,
    edge_probability: f64,
    targets: Vec<Target>,
    shrink: bool,
    budget: u64,
    output: &Path,
) -> Result<(), CliError> {
    let config = FuzzConfig {
        generator: GeneratorConfig {
            levels: 1..=max_levels,
            width: 1..=max_width,
            edge_probability,
            seed,
        },
        iterations,
        targets: if targets.is_empty() {
            Target::ALL.to_vec()
        } else {
            targets
        },
        shrink,
        oracle_budget: budget,
    };
    let summary = fuzz(&config).map_err(|e| CliError::Usage(e.to_string()))?;
    for report in &summary.reports {
        write_report_dir(&output.join(report_dir_name(report)), report)?;
    }
    println!(
        "{} instances ({} planar, {} over budget), {} successes ({} crossing-free), {} reports",
        summary.instances,
        summary.oracle_planar,
        summary.budget_skipped,
        summary.successes,
        summary.sound_successes,
        summary.reports.len()
    );
    for report in &summary.reports {
        println!(
            "{} {}",
            report.kind,
            output.join(report_dir_name(report)).display()
        );
    }
    Ok(())
}

fn cmd_shrink(dir: &Path, output: Option<&Path>) -> Result<(), CliError> {
    let report = read_report_dir(dir)?;
    let small = shrink(&report)?;
    write_report_dir(output.unwrap_or(dir), &small)?;
    println!(
        "{} vertices, {} edges -> {} vertices, {} edges",
        report.graph.vertex_count(),
        report.graph.edge_count(),
        small.graph.vertex_count(),
        small.graph.edge_count()
    );
    Ok(())
}

fn cmd_render(
    graph: &Path,
    drawing: Option<&Path>,
    args: &EmbedArgs,
    labels: bool,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let g = load_graph(graph)?;
    let d = match drawing {
        Some(path) => load_drawing(path)?,
        None => embed(&g, args)?,
    };
    let svg = render_svg(
        &g,
        &d,
        &RenderOptions {
            labels,
            title: graph.file_stem().map(|s| s.to_string_lossy().into_owned()),
        },
    )
    .map_err(|e| CliError::Input(e.to_string()))?;
    write(output, &svg)
}

fn cmd_bundled(dir: &Path) -> Result<(), CliError> {
    let b = bundled_counterexample();
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let files = [
        ("graph.lgf", write_lgf(&b.graph.to_level_graph())),
        ("randerath.rpf", write_rpf(&b.randerath)),
        ("healy-kuusik.rpf", write_rpf(&b.healy_kuusik)),
        ("harrigan-healy.rpf", write_rpf(&b.harrigan_healy)),
    ];
    for (name, text) in files {
        fs::write(dir.join(name), text).map_err(io)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Check {
            graph,
            algo,
            budget,
        } => cmd_check(&graph, algo, budget),
        Command::Embed {
            graph,
            embed,
            output,
        } => cmd_embed(&graph, &embed, output.as_deref()),
        Command::Verify { graph, drawing } => cmd_verify(&graph, &drawing),
        Command::Properize { graph, output } => {
            let g = load_graph(&graph)?;
            write(output.as_deref(), &write_lgf(&g.to_level_graph()))
        }
        Command::Fuzz {
            iterations,
            seed,
            max_levels,
            max_width,
            edge_probability,
            targets,
            shrink,
            budget,
            output,
        } => cmd_fuzz(
            iterations,
            seed,
            max_levels,
            max_width,
            edge_probability,
            targets,
            shrink,
            budget,
            &output,
        ),
        Command::Shrink { report, output } => cmd_shrink(&report, output.as_deref()),
        Command::Render {
            graph,
            drawing,
            embed,
            no_labels,
            output,
        } => cmd_render(
            &graph,
            drawing.as_deref(),
            &embed,
            !no_labels,
            output.as_deref(),
        ),
        Command::Bundled { dir } => cmd_bundled(&dir),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string();
            if !msg.is_empty() {
                eprintln!("levelplan: {msg}");
            }
            ExitCode::from(e.code())
        }
    }
}
