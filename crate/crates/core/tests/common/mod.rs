//! Independent oracles and generators shared by the integration tests. None
//! of this goes through the library's own crossing or enumeration code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use levelplan::format::Replay;
use levelplan::graph::{Edge, LevelGraph, ProperLevelGraph, Vertex};
use levelplan::lab::{classify, run_target, FailureReport};
use levelplan::oracle::brute_force_test;
use levelplan::pairs::PairLiteral;
use levelplan::Drawing;

/// Crossings counted as proper segment intersections in the plane, with
/// vertex `v` at `(index in its level's order, level)`.
pub fn geometric_crossings(graph: &ProperLevelGraph, drawing: &Drawing) -> usize {
    let point = |v: usize| -> (i64, i64) {
        let level = graph.level(v);
        let x = drawing
            .order(level)
            .and_then(|o| o.iter().position(|id| id == graph.id(v)))
            .expect("drawing places every vertex");
        (x as i64, level as i64)
    };
    let segs: Vec<_> = graph
        .edges()
        .iter()
        .map(|&(a, b)| (point(a), point(b)))
        .collect();
    segs.iter()
        .tuple_combinations()
        .filter(|(s, t)| properly_intersect(**s, **t))
        .count()
}

type Pt = (i64, i64);

fn orient(a: Pt, b: Pt, c: Pt) -> i64 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

fn properly_intersect((p, q): (Pt, Pt), (r, s): (Pt, Pt)) -> bool {
    orient(p, q, r) * orient(p, q, s) < 0 && orient(r, s, p) * orient(r, s, q) < 0
}

/// `(level index, vertex index)` endpoints.
type Slot = ((usize, usize), (usize, usize));

fn level_graph(sizes: &[usize], edges: &[Slot]) -> LevelGraph {
    let name = |level: usize, i: usize| format!("v{}_{}", level + 1, i);
    let vertices = sizes
        .iter()
        .enumerate()
        .flat_map(|(l, &n)| (0..n).map(move |i| Vertex::new(name(l, i), l as u32 + 1)))
        .collect();
    let edges = edges
        .iter()
        .map(|&((l1, i), (l2, j))| Edge::new(name(l1, i), name(l2, j)))
        .collect();
    LevelGraph::new(vertices, edges)
}

/// Every proper level graph with at most `max_vertices` vertices on levels
/// `1..=max_levels`, as labeled graphs (vertex `i` of level `l` is `v<l>_<i>`).
pub fn all_small_graphs(max_vertices: usize, max_levels: usize) -> Vec<ProperLevelGraph> {
    let mut out = Vec::new();
    let shapes = (0..max_levels)
        .map(|_| 0..=max_vertices)
        .multi_cartesian_product()
        .filter(|s| (1..=max_vertices).contains(&s.iter().sum::<usize>()));
    for sizes in shapes {
        let slots: Vec<_> = (0..max_levels.saturating_sub(1))
            .flat_map(|l| {
                (0..sizes[l])
                    .cartesian_product(0..sizes[l + 1])
                    .map(move |(i, j)| ((l, i), (l + 1, j)))
            })
            .collect();
        for mask in 0u64..(1 << slots.len()) {
            let edges: Vec<_> = (0..slots.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| slots[b])
                .collect();
            out.push(ProperLevelGraph::new(&level_graph(&sizes, &edges)).unwrap());
        }
    }
    out
}

/// Random proper graph with at most `max_vertices` vertices.
pub fn random_small_graph(rng: &mut impl Rng, max_vertices: usize) -> ProperLevelGraph {
    let levels = rng.gen_range(1..=5usize);
    let mut sizes = vec![1usize; levels.min(max_vertices)];
    let extra = rng.gen_range(0..=max_vertices - sizes.len());
    for _ in 0..extra {
        let l = rng.gen_range(0..sizes.len());
        sizes[l] += 1;
    }
    let p: f64 = rng.gen_range(0.1..0.9);
    let mut edges = Vec::new();
    for l in 0..sizes.len().saturating_sub(1) {
        for i in 0..sizes[l] {
            for j in 0..sizes[l + 1] {
                if rng.gen_bool(p) {
                    edges.push(((l, i), (l + 1, j)));
                }
            }
        }
    }
    ProperLevelGraph::new(&level_graph(&sizes, &edges)).unwrap()
}

pub fn random_drawing(graph: &ProperLevelGraph, rng: &mut impl Rng) -> Drawing {
    let mut orders = BTreeMap::new();
    for (level, range) in graph.level_ranges() {
        let mut ids: Vec<String> = range.map(|v| graph.id(v).to_string()).collect();
        ids.shuffle(rng);
        orders.insert(level, ids);
    }
    Drawing::new(orders)
}

/// Random level graph with edges spanning up to four levels.
pub fn random_long_edge_graph(rng: &mut impl Rng) -> LevelGraph {
    let levels = rng.gen_range(2..=7u32);
    let mut vertices = Vec::new();
    for l in 1..=levels {
        for i in 0..rng.gen_range(1..=3) {
            vertices.push(Vertex::new(format!("n{l}_{i}"), l));
        }
    }
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for _ in 0..rng.gen_range(1..=10) {
        let a = vertices.choose(rng).unwrap();
        let b = vertices.choose(rng).unwrap();
        if a.level < b.level && b.level - a.level <= 4 && seen.insert((a.id.clone(), b.id.clone()))
        {
            edges.push(Edge::new(a.id.clone(), b.id.clone()));
        }
    }
    LevelGraph::new(vertices, edges)
}

fn restrict(replay: &Replay, removed: &str) -> Replay {
    let keep = |l: &PairLiteral| l.first != removed && l.second != removed;
    let mut r = replay.clone();
    r.classes.retain(|(l, _)| keep(l));
    r.entries.retain(|l| keep(l));
    r.process.retain(|l| keep(l));
    r.reference = r.reference.map(|d| {
        Drawing::new(
            d.orders()
                .iter()
                .map(|(&l, ids)| {
                    (
                        l,
                        ids.iter()
                            .filter(|id| *id != removed)
                            .cloned()
                            .collect::<Vec<_>>(),
                    )
                })
                .filter(|(_, ids)| !ids.is_empty())
                .collect(),
        )
    });
    r
}

fn still_fails(report: &FailureReport, graph: LevelGraph, replay: Option<Replay>) -> bool {
    let graph = ProperLevelGraph::new(&graph).unwrap();
    let planar = brute_force_test(&graph).unwrap().planar;
    if planar != report.oracle_planar {
        return false;
    }
    match run_target(&graph, report.target, replay.as_ref()) {
        Ok(obs) => {
            matches!(classify(&graph, report.target, &obs, planar), Some((k, _)) if k == report.kind)
        }
        Err(_) => false,
    }
}

/// No single edge or vertex deletion keeps the failure.
pub fn is_one_minimal(report: &FailureReport) -> bool {
    let g = report.graph.to_level_graph();
    for i in 0..g.edges().len() {
        let mut edges = g.edges().to_vec();
        edges.remove(i);
        if still_fails(
            report,
            LevelGraph::new(g.vertices().to_vec(), edges),
            report.replay.clone(),
        ) {
            return false;
        }
    }
    for v in g.vertices() {
        let smaller = LevelGraph::new(
            g.vertices()
                .iter()
                .filter(|w| w.id != v.id)
                .cloned()
                .collect(),
            g.edges()
                .iter()
                .filter(|e| e.lower != v.id && e.upper != v.id)
                .cloned()
                .collect(),
        );
        if still_fails(
            report,
            smaller,
            report.replay.as_ref().map(|r| restrict(r, &v.id)),
        ) {
            return false;
        }
    }
    true
}
