use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{classify, run_target, shrink, FailureKind, FailureReport, Observation, Target};
use crate::drawing::{canonical_positions, Drawing};
use crate::format::{Algo, Replay};
use crate::graph::ProperLevelGraph;
use crate::greedy::EmbedOutcome;
use crate::oracle::{brute_force_test_with_budget, random_proper_graph, GeneratorConfig};
use crate::pairsat::build_constraints;

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    /// Shape of the instances; `generator.seed` is the campaign seed.
    pub generator: GeneratorConfig,
    pub iterations: u64,
    pub targets: Vec<Target>,
    pub shrink: bool,
    pub oracle_budget: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            generator: GeneratorConfig::default(),
            iterations: 1000,
            targets: Target::ALL.to_vec(),
            shrink: false,
            oracle_budget: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzSummary {
    /// In iteration order, then target order.
    pub reports: Vec<FailureReport>,
    pub instances: u64,
    pub oracle_planar: u64,
    /// Instances skipped because the oracle ran out of budget.
    pub budget_skipped: u64,
    /// Successful runs of the class-assignment embedders.
    pub successes: u64,
    /// Of those, the ones whose drawing is crossing-free.
    pub sound_successes: u64,
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator seed of iteration `i`: `mix64(seed ^ i)`.
pub fn iteration_seed(seed: u64, i: u64) -> u64 {
    mix64(seed ^ i)
}

/// Seed of the random choices target `t` makes in an iteration:
/// `mix64(iteration_seed + 1 + t)`, `t` being the position in [`Target::ALL`].
pub fn policy_seed(iteration_seed: u64, target: Target) -> u64 {
    let t = Target::ALL.iter().position(|&x| x == target).unwrap_or(0) as u64;
    mix64(iteration_seed.wrapping_add(1 + t))
}

fn random_drawing(graph: &ProperLevelGraph, rng: &mut ChaCha8Rng) -> Drawing {
    let mut pos = canonical_positions(graph);
    for (_, range) in graph.level_ranges() {
        let mut slots: Vec<usize> = (0..range.len()).collect();
        slots.shuffle(rng);
        for (v, s) in range.zip(slots) {
            pos[v] = s;
        }
    }
    Drawing::from_positions(graph, &pos)
}

/// Random but fully explicit choices for one embedder run. The graph must
/// be level planar (its constraint system satisfiable).
pub fn random_replay(graph: &ProperLevelGraph, algo: Algo, seed: u64) -> Replay {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let system = build_constraints(graph);
    let classes = system
        .equivalence_classes()
        .expect("random replays need a satisfiable instance");
    let universe = system.universe();
    let mut replay = Replay::new(algo);
    match algo {
        Algo::Randerath | Algo::HealyKuusik => {
            if algo == Algo::HealyKuusik {
                replay.reference = Some(random_drawing(graph, &mut rng));
            }
            let mut order: Vec<usize> = (0..classes.len()).collect();
            order.shuffle(&mut rng);
            replay.classes = order
                .into_iter()
                .map(|c| {
                    (
                        universe.name(graph, classes[c].representative()),
                        rng.gen_bool(0.5),
                    )
                })
                .collect();
        }
        Algo::HarriganHealy => {
            replay.reference = Some(random_drawing(graph, &mut rng));
            for class in classes.iter().filter(|c| c.len() > 1) {
                let (p, _) = class.members[rng.gen_range(0..class.len())];
                replay.entries.push(universe.name(graph, p));
            }
            let mut order: Vec<usize> = (0..universe.len()).collect();
            order.shuffle(&mut rng);
            replay.process = order.into_iter().map(|p| universe.name(graph, p)).collect();
        }
    }
    replay
}

#[derive(Default)]
struct IterationResult {
    reports: Vec<FailureReport>,
    planar: bool,
    skipped: bool,
    successes: u64,
    sound_successes: u64,
}

fn run_iteration(config: &FuzzConfig, i: u64) -> IterationResult {
    let seed = iteration_seed(config.generator.seed, i);
    let generator = GeneratorConfig {
        seed,
        ..config.generator.clone()
    };
    let graph = random_proper_graph(&generator).expect("validated config");
    let mut out = IterationResult::default();
    let oracle = match brute_force_test_with_budget(&graph, config.oracle_budget) {
        Ok(v) => v,
        Err(_) => {
            out.skipped = true;
            return out;
        }
    };
    out.planar = oracle.planar;
    for &target in &config.targets {
        if target.is_embedder() && !oracle.planar {
            continue;
        }
        let replay = match target {
            Target::Embedder(algo) => Some(random_replay(&graph, algo, policy_seed(seed, target))),
            _ => None,
        };
        let observation =
            run_target(&graph, target, replay.as_ref()).expect("generated replays are well-formed");
        let failure = classify(&graph, target, &observation, oracle.planar);
        if let Observation::Outcome(EmbedOutcome::Success(_)) = &observation {
            out.successes += 1;
            if failure.is_none() {
                out.sound_successes += 1;
            }
        }
        if let Some((kind, evidence)) = failure {
            let report = FailureReport {
                graph: graph.clone(),
                oracle_planar: oracle.planar,
                target,
                replay,
                kind,
                evidence,
                seed,
                iteration: i,
            };
            let report = if config.shrink {
                shrink(&report).unwrap_or(report)
            } else {
                report
            };
            out.reports.push(report);
        }
    }
    out
}

/// Runs a campaign. Iteration `i` depends only on `(generator.seed, i)`, so
/// the result does not depend on how iterations are scheduled.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzSummary, crate::oracle::ConfigError> {
    config.generator.validate()?;
    let results: Vec<IterationResult> = (0..config.iterations)
        .into_par_iter()
        .map(|i| run_iteration(config, i))
        .collect();
    let mut summary = FuzzSummary::default();
    for r in results {
        if r.skipped {
            summary.budget_skipped += 1;
            continue;
        }
        summary.instances += 1;
        summary.oracle_planar += r.planar as u64;
        summary.successes += r.successes;
        summary.sound_successes += r.sound_successes;
        summary.reports.extend(r.reports);
    }
    Ok(summary)
}

impl FuzzSummary {
    pub fn count(&self, target: Target, kind: FailureKind) -> usize {
        self.reports
            .iter()
            .filter(|r| r.target == target && r.kind == kind)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix64_is_pinned() {
        assert_eq!(mix64(0), 0xE220_A839_7B1D_CDAF);
        assert_ne!(iteration_seed(1, 0), iteration_seed(0, 1) ^ 1);
    }

    #[test]
    fn path_iteration_reports_nothing() {
        let config = FuzzConfig {
            generator: GeneratorConfig {
                levels: 4..=4,
                width: 1..=1,
                edge_probability: 1.0,
                seed: 5,
            },
            iterations: 1,
            ..FuzzConfig::default()
        };
        let summary = fuzz(&config).unwrap();
        assert!(summary.reports.is_empty());
        assert_eq!(summary.instances, 1);
        assert_eq!(summary.successes, 2);
    }
}
