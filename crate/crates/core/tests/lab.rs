use levelplan::drawing::count_crossings;
use levelplan::format::{Algo, Replay};
use levelplan::graph::{make_proper, LevelGraph, ProperLevelGraph};
use levelplan::greedy::{EmbedOutcome, GreedyPolicy};
use levelplan::lab::{
    bundled_counterexample, fuzz, has_captioned_shape, nontrivial_components, read_report_dir,
    replay_report, report_dir_name, reproduces, shrink, write_report_dir, FailureKind,
    FailureReport, FuzzConfig, LabError, Target,
};
use levelplan::oracle::{brute_force_test, GeneratorConfig};
use levelplan::pairs::PairLiteral;
use levelplan::pairsat::{greedy_embed, satisfiable};
use levelplan::vegraph::{harrigan_healy_embed, healy_kuusik_embed};
use levelplan::Drawing;

#[test]
fn bundled_is_planar() {
    let b = bundled_counterexample();
    assert!(brute_force_test(&b.graph).unwrap().planar);
    assert!(satisfiable(&b.graph));
    assert!(nontrivial_components(&b.graph) >= 3);
}

#[test]
fn bundled_breaks_greedy_with_captioned_trace() {
    let b = bundled_counterexample();
    let outcome = greedy_embed(&b.graph, &b.randerath.policy()).unwrap();
    let EmbedOutcome::Contradiction(trace) = outcome else {
        panic!("greedy embedder succeeded");
    };
    assert!(has_captioned_shape(&b.graph, &trace, 3, 4), "{trace}");
}

#[test]
fn bundled_breaks_component_swap() {
    let b = bundled_counterexample();
    let reference = b.healy_kuusik.reference.clone().unwrap();
    let outcome = healy_kuusik_embed(&b.graph, &reference, &b.healy_kuusik.policy()).unwrap();
    assert!(outcome.is_contradiction());
}

#[test]
fn bundled_breaks_two_pass() {
    let b = bundled_counterexample();
    let reference = b.harrigan_healy.reference.clone().unwrap();
    let d = harrigan_healy_embed(&b.graph, &reference, &b.harrigan_healy.choices()).unwrap();
    assert!(count_crossings(&b.graph, &d).unwrap() >= 1);
}

fn k22_with_extra() -> ProperLevelGraph {
    make_proper(&LevelGraph::from_slices(
        &[
            ("u1", 1),
            ("u2", 1),
            ("v1", 2),
            ("v2", 2),
            ("w", 2),
            ("z", 3),
        ],
        &[
            ("u1", "v1"),
            ("u1", "v2"),
            ("u2", "v1"),
            ("u2", "v2"),
            ("w", "z"),
        ],
    ))
    .unwrap()
}

/// Greedy-embedder report whose evidence comes from an actual run.
fn greedy_report(graph: ProperLevelGraph, replay: Replay) -> FailureReport {
    let mut report = FailureReport {
        graph,
        oracle_planar: true,
        target: Target::Embedder(Algo::Randerath),
        replay: Some(replay),
        kind: FailureKind::FalseNegative,
        evidence: String::new(),
        seed: 7,
        iteration: 3,
    };
    report.evidence = replay_report(&report).unwrap().expect("fails").1;
    report
}

#[test]
fn shrink_rejects_irreproducible() {
    let report = FailureReport {
        graph: k22_with_extra(),
        oracle_planar: false,
        target: Target::Satcheck,
        replay: None,
        kind: FailureKind::FalseNegative,
        evidence: "made up".into(),
        seed: 0,
        iteration: 0,
    };
    assert!(matches!(shrink(&report), Err(LabError::Irreproducible(_))));
}

#[test]
fn shrink_bundled_keeps_kind_and_is_one_minimal() {
    let b = bundled_counterexample();
    let report = greedy_report(b.graph.clone(), b.randerath.clone());
    let small = shrink(&report).unwrap();
    assert_eq!(small.kind, FailureKind::FalseNegative);
    assert!(small.graph.vertex_count() <= report.graph.vertex_count());
    assert!(small.graph.edge_count() <= report.graph.edge_count());
    assert!(reproduces(&small));
    // Shrinking again changes nothing.
    assert_eq!(shrink(&small).unwrap(), small);
}

#[test]
fn shrink_drops_isolated_vertex() {
    let b = bundled_counterexample();
    let mut g = b.graph.to_level_graph();
    let mut vs = g.vertices().to_vec();
    vs.push(levelplan::Vertex {
        id: "lonely".into(),
        level: 2,
    });
    g = LevelGraph::new(vs, g.edges().to_vec());
    let report = greedy_report(ProperLevelGraph::new(&g).unwrap(), b.randerath.clone());
    let small = shrink(&report).unwrap();
    assert!(small.graph.lookup("lonely").is_none());
}

#[test]
fn report_dir_round_trip() {
    let b = bundled_counterexample();
    let report = greedy_report(b.graph.clone(), b.randerath.clone());
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join(report_dir_name(&report));
    assert_eq!(
        report_dir_name(&report),
        "randerath-000003-0000000000000007"
    );
    write_report_dir(&dir, &report).unwrap();
    let back = read_report_dir(&dir).unwrap();
    assert_eq!(back, report);
    assert!(reproduces(&back));

    let no_replay = FailureReport {
        target: Target::Satcheck,
        replay: None,
        ..report
    };
    write_report_dir(&dir, &no_replay).unwrap();
    assert!(!dir.join("replay.rpf").exists());
    assert_eq!(read_report_dir(&dir).unwrap(), no_replay);
}

#[test]
fn replay_literal_names_class_through_any_member() {
    let b = bundled_counterexample();
    let (lit, value) = b.randerath.classes[0].clone();
    let mut flipped = b.randerath.clone();
    flipped.classes[0] = (PairLiteral::new(lit.level, &lit.second, &lit.first), !value);
    assert_eq!(
        greedy_embed(&b.graph, &b.randerath.policy()).unwrap(),
        greedy_embed(&b.graph, &flipped.policy()).unwrap()
    );
    // Canonical policy is the empty replay.
    assert_eq!(
        greedy_embed(&b.graph, &GreedyPolicy::Canonical).unwrap(),
        greedy_embed(&b.graph, &GreedyPolicy::Replay(Vec::new())).unwrap()
    );
}

#[test]
fn fuzz_is_deterministic_and_reports_reproduce() {
    let config = FuzzConfig {
        generator: GeneratorConfig {
            seed: 11,
            ..GeneratorConfig::default()
        },
        iterations: 400,
        ..FuzzConfig::default()
    };
    let a = fuzz(&config).unwrap();
    let b = fuzz(&config).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.instances + a.budget_skipped, 400);
    for r in &a.reports {
        assert!(reproduces(r), "{}", report_dir_name(r));
        assert_ne!(r.kind, FailureKind::FalsePositive);
    }
    assert_eq!(a.successes, a.sound_successes);
}

#[test]
fn fuzz_rejects_bad_config() {
    let config = FuzzConfig {
        generator: GeneratorConfig {
            edge_probability: 1.5,
            ..GeneratorConfig::default()
        },
        ..FuzzConfig::default()
    };
    assert!(fuzz(&config).is_err());
}

#[test]
fn reference_defaults_to_sorted_ids() {
    let g = k22_with_extra();
    assert_eq!(
        levelplan::lab::reference_of(&g, None),
        Drawing::canonical(&g)
    );
}
