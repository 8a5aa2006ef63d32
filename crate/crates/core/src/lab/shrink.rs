use std::collections::{BTreeMap, HashSet};

use super::{classify, reproduces, run_target, FailureReport, LabError};
use crate::drawing::Drawing;
use crate::format::Replay;
use crate::graph::{Edge, LevelGraph, ProperLevelGraph};
use crate::oracle::brute_force_test;
use crate::pairs::PairLiteral;

/// Greedy deletion minimization. Tries every edge deletion, then every
/// vertex deletion, in canonical order, and repeats until a full pass keeps
/// nothing. A candidate is kept when the oracle verdict is unchanged and the
/// same failure kind reproduces with the replay restricted to what is left.
/// The result is 1-minimal.
pub fn shrink(report: &FailureReport) -> Result<FailureReport, LabError> {
    if !reproduces(report) {
        return Err(LabError::Irreproducible(format!(
            "{} does not report {} on the stored replay",
            report.target, report.kind
        )));
    }
    let mut current = report.clone();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < current.graph.edge_count() {
            match try_candidate(&current, &without_edge(&current.graph, i), &HashSet::new())? {
                Some(next) => {
                    current = next;
                    changed = true;
                }
                None => i += 1,
            }
        }
        let mut v = 0;
        while v < current.graph.vertex_count() {
            let id = current.graph.id(v).to_string();
            let removed = HashSet::from([id.clone()]);
            match try_candidate(&current, &without_vertex(&current.graph, &id), &removed)? {
                Some(next) => {
                    current = next;
                    changed = true;
                }
                None => v += 1,
            }
        }
        if !changed {
            return Ok(current);
        }
    }
}

fn without_edge(graph: &ProperLevelGraph, i: usize) -> LevelGraph {
    let g = graph.to_level_graph();
    let mut edges = g.edges().to_vec();
    edges.remove(i);
    LevelGraph::new(g.vertices().to_vec(), edges)
}

fn without_vertex(graph: &ProperLevelGraph, id: &str) -> LevelGraph {
    let g = graph.to_level_graph();
    LevelGraph::new(
        g.vertices()
            .iter()
            .filter(|v| v.id != id)
            .cloned()
            .collect(),
        g.edges()
            .iter()
            .filter(|e| e.lower != id && e.upper != id)
            .cloned()
            .collect::<Vec<Edge>>(),
    )
}

fn restrict_replay(replay: &Replay, removed: &HashSet<String>) -> Replay {
    let keep = |l: &PairLiteral| !removed.contains(&l.first) && !removed.contains(&l.second);
    Replay {
        algo: replay.algo,
        classes: replay
            .classes
            .iter()
            .filter(|(l, _)| keep(l))
            .cloned()
            .collect(),
        entries: replay.entries.iter().filter(|l| keep(l)).cloned().collect(),
        process: replay.process.iter().filter(|l| keep(l)).cloned().collect(),
        reference: replay.reference.as_ref().map(|d| {
            Drawing::new(
                d.orders()
                    .iter()
                    .map(|(&l, ids)| {
                        (
                            l,
                            ids.iter()
                                .filter(|id| !removed.contains(*id))
                                .cloned()
                                .collect::<Vec<_>>(),
                        )
                    })
                    .filter(|(_, ids)| !ids.is_empty())
                    .collect::<BTreeMap<_, _>>(),
            )
        }),
    }
}

fn try_candidate(
    current: &FailureReport,
    candidate: &LevelGraph,
    removed: &HashSet<String>,
) -> Result<Option<FailureReport>, LabError> {
    let graph = ProperLevelGraph::new(candidate)?;
    let oracle = brute_force_test(&graph)?;
    if oracle.planar != current.oracle_planar {
        return Ok(None);
    }
    let replay = current.replay.as_ref().map(|r| restrict_replay(r, removed));
    let Ok(observation) = run_target(&graph, current.target, replay.as_ref()) else {
        return Ok(None);
    };
    match classify(&graph, current.target, &observation, oracle.planar) {
        Some((kind, evidence)) if kind == current.kind => Ok(Some(FailureReport {
            graph,
            replay,
            evidence,
            ..current.clone()
        })),
        _ => Ok(None),
    }
}
