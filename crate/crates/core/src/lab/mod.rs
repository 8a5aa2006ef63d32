//! Differential testing of the embedders against the oracle.
//!
//! A [`FailureReport`] pins a graph, the algorithm and every choice the run
//! made, so re-running it reproduces the failure exactly. [`fuzz`] searches
//! for reports, [`shrink`] minimizes them, and [`bundled_counterexample`]
//! returns a checked-in instance that breaks all three embedders.

mod bundled;
mod fuzz;
mod report;
mod shrink;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

pub use bundled::{
    bundled_counterexample, find_bundled, has_captioned_shape, nontrivial_components, Bundled,
    BundledSearch,
};
pub use fuzz::{fuzz, iteration_seed, mix64, policy_seed, random_replay, FuzzConfig, FuzzSummary};
pub use report::{read_report_dir, report_dir_name, write_report_dir};
pub use shrink::shrink;

use crate::drawing::{crossing_pairs, Drawing};
use crate::format::{write_ldf, Algo, FormatError, Replay};
use crate::graph::{GraphError, ProperLevelGraph};
use crate::greedy::{EmbedError, EmbedOutcome};
use crate::oracle::OracleError;
use crate::pairsat::{greedy_embed, satisfiable};
use crate::vegraph::{
    build_ve_graph, harrigan_healy_embed, healy_kuusik_embed, label_ve_graph, odd_cycle_test,
    CycleVerdict,
};

/// What the fuzzer runs against the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// The 2-SAT satisfiability test.
    Satcheck,
    /// The odd-cycle test on the ve-graph labeled by the id-sorted drawing.
    VegraphTest,
    Embedder(Algo),
}

impl Target {
    pub const ALL: [Target; 5] = [
        Target::Satcheck,
        Target::VegraphTest,
        Target::Embedder(Algo::Randerath),
        Target::Embedder(Algo::HealyKuusik),
        Target::Embedder(Algo::HarriganHealy),
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Satcheck => "satcheck",
            Target::VegraphTest => "vegraph-test",
            Target::Embedder(a) => a.name(),
        }
    }

    pub fn is_embedder(self) -> bool {
        matches!(self, Target::Embedder(_))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "satcheck" => Ok(Target::Satcheck),
            "vegraph-test" => Ok(Target::VegraphTest),
            other => other.parse().map(Target::Embedder),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FailureKind {
    /// Level-planar instance reported as negative.
    FalseNegative,
    /// Output drawing with crossings on a level-planar instance.
    NonPlanarOutput,
    /// Non-planar instance reported as positive (tests only).
    FalsePositive,
}

impl FailureKind {
    pub fn name(self) -> &'static str {
        match self {
            FailureKind::FalseNegative => "false-negative",
            FailureKind::NonPlanarOutput => "non-planar-output",
            FailureKind::FalsePositive => "false-positive",
        }
    }
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FailureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "false-negative" => Ok(FailureKind::FalseNegative),
            "non-planar-output" => Ok(FailureKind::NonPlanarOutput),
            "false-positive" => Ok(FailureKind::FalsePositive),
            _ => Err(format!("unknown failure kind {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureReport {
    pub graph: ProperLevelGraph,
    pub oracle_planar: bool,
    pub target: Target,
    /// Present for embedder targets.
    pub replay: Option<Replay>,
    pub kind: FailureKind,
    /// Contradiction trace, crossing list or verdict mismatch, as text.
    pub evidence: String,
    pub seed: u64,
    pub iteration: u64,
}

#[derive(Debug, Error)]
pub enum LabError {
    #[error("report does not reproduce: {0}")]
    Irreproducible(String),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{file}: {source}")]
    Format { file: String, source: FormatError },
    #[error("{0}")]
    Report(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What one run of a target produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observation {
    Verdict(bool),
    Outcome(EmbedOutcome),
    Drawing(Drawing),
}

/// The reference drawing a replay pins, or the id-sorted one.
pub fn reference_of(graph: &ProperLevelGraph, replay: Option<&Replay>) -> Drawing {
    replay
        .and_then(|r| r.reference.clone())
        .unwrap_or_else(|| Drawing::canonical(graph))
}

pub fn run_target(
    graph: &ProperLevelGraph,
    target: Target,
    replay: Option<&Replay>,
) -> Result<Observation, EmbedError> {
    let reference = || reference_of(graph, replay);
    let empty = Replay::new(Algo::Randerath);
    let replay_or_empty = replay.unwrap_or(&empty);
    Ok(match target {
        Target::Satcheck => Observation::Verdict(satisfiable(graph)),
        Target::VegraphTest => {
            let lve = label_ve_graph(graph, &build_ve_graph(graph), &reference())?;
            Observation::Verdict(odd_cycle_test(&lve) == CycleVerdict::Consistent)
        }
        Target::Embedder(Algo::Randerath) => {
            Observation::Outcome(greedy_embed(graph, &replay_or_empty.policy())?)
        }
        Target::Embedder(Algo::HealyKuusik) => Observation::Outcome(healy_kuusik_embed(
            graph,
            &reference(),
            &replay_or_empty.policy(),
        )?),
        Target::Embedder(Algo::HarriganHealy) => Observation::Drawing(harrigan_healy_embed(
            graph,
            &reference(),
            &replay_or_empty.choices(),
        )?),
    })
}

fn crossing_evidence(graph: &ProperLevelGraph, drawing: &Drawing) -> Option<String> {
    let crossings = crossing_pairs(graph, drawing).expect("embedder output matches its graph");
    if crossings.is_empty() {
        return None;
    }
    let edges = graph.edges();
    let name = |i: usize| format!("{}-{}", graph.id(edges[i].0), graph.id(edges[i].1));
    let mut out = write_ldf(drawing);
    for (i, j) in crossings {
        let _ = writeln!(out, "crossing {} x {}", name(i), name(j));
    }
    Some(out.trim_end().to_string())
}

/// Compares an observation with the oracle's verdict; returns the failure
/// kind and its evidence, if any.
pub fn classify(
    graph: &ProperLevelGraph,
    target: Target,
    observation: &Observation,
    oracle_planar: bool,
) -> Option<(FailureKind, String)> {
    match observation {
        Observation::Verdict(v) if *v == oracle_planar => None,
        Observation::Verdict(v) => {
            let kind = if *v {
                FailureKind::FalsePositive
            } else {
                FailureKind::FalseNegative
            };
            Some((
                kind,
                format!("{target} says planar={v}, oracle says planar={oracle_planar}"),
            ))
        }
        Observation::Outcome(EmbedOutcome::Contradiction(trace)) if oracle_planar => {
            Some((FailureKind::FalseNegative, trace.to_string()))
        }
        Observation::Outcome(EmbedOutcome::Contradiction(_)) => None,
        Observation::Outcome(EmbedOutcome::Success(d)) | Observation::Drawing(d) => {
            crossing_evidence(graph, d).map(|e| (FailureKind::NonPlanarOutput, e))
        }
    }
}

/// Re-runs a report's target on its graph and replay.
pub fn replay_report(report: &FailureReport) -> Result<Option<(FailureKind, String)>, EmbedError> {
    let obs = run_target(&report.graph, report.target, report.replay.as_ref())?;
    Ok(classify(
        &report.graph,
        report.target,
        &obs,
        report.oracle_planar,
    ))
}

/// Whether re-running reproduces the same kind and byte-identical evidence.
pub fn reproduces(report: &FailureReport) -> bool {
    matches!(replay_report(report), Ok(Some((k, e))) if k == report.kind && e == report.evidence)
}
