//! The checked-in counterexample.
//!
//! The instance was found with [`find_bundled`] (run
//! `cargo run --release -p levelplan --example find_bundled`) and frozen
//! under `assets/bundled/`. It is level planar, yet:
//!
//! * the 2-SAT greedy embedder, after three free class picks, has closure
//!   force a pair whose class (four chained pairs) demands the reverse of an
//!   order closure already derived;
//! * the component-swap embedder fails the same way on the same picks;
//! * the two-pass embedder returns a drawing with crossings.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{shrink, FailureKind, FailureReport, Target};
use crate::drawing::{count_crossings, Drawing};
use crate::format::{parse_lgf, parse_rpf, Algo, Replay};
use crate::graph::ProperLevelGraph;
use crate::greedy::{Cause, EmbedOutcome, GreedyPolicy, Origin, Trace};
use crate::oracle::{brute_force_test, random_proper_graph, GeneratorConfig};
use crate::pairsat::{build_constraints, greedy_embed};
use crate::vegraph::{build_ve_graph, harrigan_healy_embed, healy_kuusik_embed};

use super::fuzz::{mix64, random_replay};

const GRAPH: &str = include_str!("../../assets/bundled/graph.lgf");
const RANDERATH: &str = include_str!("../../assets/bundled/randerath.rpf");
const HEALY_KUUSIK: &str = include_str!("../../assets/bundled/healy-kuusik.rpf");
const HARRIGAN_HEALY: &str = include_str!("../../assets/bundled/harrigan-healy.rpf");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundled {
    pub graph: ProperLevelGraph,
    pub randerath: Replay,
    pub healy_kuusik: Replay,
    pub harrigan_healy: Replay,
}

pub fn bundled_counterexample() -> Bundled {
    let graph = parse_lgf(GRAPH).expect("bundled graph parses");
    Bundled {
        graph: ProperLevelGraph::new(&graph).expect("bundled graph is proper"),
        randerath: parse_rpf(RANDERATH).expect("bundled replay parses"),
        healy_kuusik: parse_rpf(HEALY_KUUSIK).expect("bundled replay parses"),
        harrigan_healy: parse_rpf(HARRIGAN_HEALY).expect("bundled replay parses"),
    }
}

/// The shape the bundled failure must have: exactly `free` free picks, then
/// a closure-forced class assignment that contradicts an order closure
/// derived, in a class of `class_size` pairs.
pub fn has_captioned_shape(
    graph: &ProperLevelGraph,
    trace: &Trace,
    free: usize,
    class_size: usize,
) -> bool {
    let last = trace.steps.last().expect("a conflict follows a step");
    let system = build_constraints(graph);
    let Ok(classes) = system.equivalence_classes() else {
        return false;
    };
    let Some((rep, _)) = system.universe().resolve(graph, &trace.conflict.class) else {
        return false;
    };
    let size = classes
        .iter()
        .find(|c| c.representative() == rep)
        .map_or(0, |c| c.len());
    trace.free_choices() == free
        && matches!(last.cause, Cause::ClosureForced(_))
        && trace.conflict.existing == Origin::Closure
        && size == class_size
}

/// Number of ve-components with at least one link.
pub fn nontrivial_components(graph: &ProperLevelGraph) -> usize {
    let ve = build_ve_graph(graph);
    let mut seen = vec![false; ve.node_count()];
    let mut count = 0;
    for start in 0..ve.node_count() {
        if seen[start] || ve.incident(start).is_empty() {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(n) = stack.pop() {
            for &l in ve.incident(n) {
                let m = ve.other_end(l, n);
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
    }
    count
}

/// Parameters of the constrained search for a bundled instance.
#[derive(Clone, Debug)]
pub struct BundledSearch {
    pub generator: GeneratorConfig,
    pub iterations: u64,
    /// Random two-pass choices tried per candidate graph.
    pub hh_attempts: u32,
    pub free_picks: usize,
    pub class_size: usize,
}

impl Default for BundledSearch {
    fn default() -> Self {
        BundledSearch {
            generator: GeneratorConfig {
                levels: 3..=5,
                width: 2..=5,
                edge_probability: 0.35,
                seed: 0,
            },
            iterations: 200_000,
            hh_attempts: 2000,
            free_picks: 3,
            class_size: 4,
        }
    }
}

/// Replay listing exactly the free picks of a trace.
fn picks_of(trace: &Trace) -> Vec<(crate::pairs::PairLiteral, bool)> {
    trace
        .steps
        .iter()
        .filter(|s| s.cause == Cause::FreeChoice)
        .map(|s| (s.literal.clone(), true))
        .collect()
}

/// Fuzz, shrink and filter until an instance breaks all three embedders
/// with the required trace shape. Returns the smallest instance found among
/// the first few hits.
pub fn find_bundled(search: &BundledSearch) -> Option<Bundled> {
    let mut best: Option<Bundled> = None;
    let mut hits = 0;
    for i in 0..search.iterations {
        let seed = mix64(search.generator.seed ^ i);
        let graph = random_proper_graph(&GeneratorConfig {
            seed,
            ..search.generator.clone()
        })
        .ok()?;
        if !brute_force_test(&graph).ok()?.planar {
            continue;
        }
        let replay = random_replay(&graph, Algo::Randerath, mix64(seed.wrapping_add(1)));
        let Ok(EmbedOutcome::Contradiction(trace)) = greedy_embed(&graph, &replay.policy()) else {
            continue;
        };
        let report = FailureReport {
            graph: graph.clone(),
            oracle_planar: true,
            target: Target::Embedder(Algo::Randerath),
            replay: Some(replay),
            kind: FailureKind::FalseNegative,
            evidence: trace.to_string(),
            seed,
            iteration: i,
        };
        let Ok(small) = shrink(&report) else { continue };
        let graph = small.graph;
        let Some(Ok(EmbedOutcome::Contradiction(trace))) = small
            .replay
            .as_ref()
            .map(|r| greedy_embed(&graph, &r.policy()))
        else {
            continue;
        };
        let picks = picks_of(&trace);
        let Ok(EmbedOutcome::Contradiction(trace)) =
            greedy_embed(&graph, &GreedyPolicy::Replay(picks.clone()))
        else {
            continue;
        };
        if !has_captioned_shape(&graph, &trace, search.free_picks, search.class_size)
            || nontrivial_components(&graph) < 3
        {
            continue;
        }
        let mut randerath = Replay::new(Algo::Randerath);
        randerath.classes = picks.clone();
        let mut healy_kuusik = Replay::new(Algo::HealyKuusik);
        healy_kuusik.classes = picks;
        healy_kuusik.reference = Some(Drawing::canonical(&graph));
        let hk = healy_kuusik_embed(&graph, &Drawing::canonical(&graph), &healy_kuusik.policy());
        if !matches!(hk, Ok(EmbedOutcome::Contradiction(_))) {
            continue;
        }
        let Some(harrigan_healy) = find_hh_choices(&graph, seed, search.hh_attempts) else {
            continue;
        };
        let candidate = Bundled {
            graph,
            randerath,
            healy_kuusik,
            harrigan_healy,
        };
        let size = |b: &Bundled| (b.graph.vertex_count(), b.graph.edge_count());
        if best.as_ref().is_none_or(|b| size(&candidate) < size(b)) {
            best = Some(candidate);
        }
        hits += 1;
        if hits >= 20 {
            break;
        }
    }
    best
}

/// Random two-pass choices on the id-sorted reference until the output has
/// a crossing; the processing order lists only the nodes of nontrivial
/// components, shuffled.
fn find_hh_choices(graph: &ProperLevelGraph, seed: u64, attempts: u32) -> Option<Replay> {
    let system = build_constraints(graph);
    let classes = system.equivalence_classes().ok()?;
    let universe = system.universe();
    let reference = Drawing::canonical(graph);
    let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed ^ 0x4848));
    let nontrivial: Vec<_> = classes.iter().filter(|c| c.len() > 1).collect();
    for _ in 0..attempts {
        let mut replay = Replay::new(Algo::HarriganHealy);
        replay.reference = Some(reference.clone());
        let mut nodes = Vec::new();
        for class in &nontrivial {
            let (p, _) = class.members[rng.gen_range(0..class.len())];
            replay.entries.push(universe.name(graph, p));
            nodes.extend(class.members.iter().map(|&(q, _)| q));
        }
        nodes.shuffle(&mut rng);
        replay.process = nodes.into_iter().map(|p| universe.name(graph, p)).collect();
        let drawing = harrigan_healy_embed(graph, &reference, &replay.choices()).ok()?;
        if count_crossings(graph, &drawing).ok()? > 0 {
            return Some(replay);
        }
    }
    None
}
