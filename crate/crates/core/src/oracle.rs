//! Ground truth by exhaustive search, and seeded random instances.
//!
//! The search fixes levels bottom-up and, within a level, vertex by vertex
//! in lexicographic order of the remaining candidates, so candidate drawings
//! are visited in lexicographic order of their per-level permutations. A
//! partial drawing is abandoned as soon as it contains a crossing. Because
//! edges only join adjacent levels, whether a prefix can be completed depends
//! only on the order of its last level; orders already known to be dead ends
//! are skipped. Vertices without edges are placed last on their level, since
//! they never take part in a crossing.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::drawing::Drawing;
use crate::graph::{Edge, LevelGraph, ProperLevelGraph, Vertex, VertexIx};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub planar: bool,
    /// A crossing-free drawing, present iff `planar`.
    pub witness: Option<Drawing>,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exceeded ({0} extensions)")]
    BudgetExceeded(u64),
}

pub fn brute_force_test(graph: &ProperLevelGraph) -> Result<OracleVerdict, OracleError> {
    brute_force_test_with_budget(graph, DEFAULT_BUDGET)
}

/// Exhaustive search; `budget` bounds the number of single-vertex extensions
/// of a partial drawing.
pub fn brute_force_test_with_budget(
    graph: &ProperLevelGraph,
    budget: u64,
) -> Result<OracleVerdict, OracleError> {
    let mut levels = Vec::new();
    let mut isolated = Vec::new();
    let mut prev_level = None;
    for (level, range) in graph.level_ranges() {
        let (active, idle): (Vec<VertexIx>, Vec<VertexIx>) =
            range.partition(|&v| graph.degree(v) > 0);
        levels.push(SearchLevel {
            has_below: prev_level == Some(level.wrapping_sub(1)),
            active,
        });
        isolated.push(idle);
        prev_level = Some(level);
    }
    let mut search = Search {
        graph,
        levels,
        pos: vec![usize::MAX; graph.vertex_count()],
        dead: Vec::new(),
        used: 0,
        budget,
    };
    search.dead = vec![HashSet::new(); search.levels.len()];
    if !search.level(0)? {
        return Ok(OracleVerdict {
            planar: false,
            witness: None,
        });
    }
    let mut pos = search.pos;
    for (sl, idle) in search.levels.iter().zip(&isolated) {
        for (k, &v) in idle.iter().enumerate() {
            pos[v] = sl.active.len() + k;
        }
    }
    Ok(OracleVerdict {
        planar: true,
        witness: Some(Drawing::from_positions(graph, &pos)),
    })
}

struct SearchLevel {
    /// Whether the level directly below is nonempty (edges can reach it).
    has_below: bool,
    active: Vec<VertexIx>,
}

struct Search<'a> {
    graph: &'a ProperLevelGraph,
    levels: Vec<SearchLevel>,
    pos: Vec<usize>,
    dead: Vec<HashSet<Vec<VertexIx>>>,
    used: u64,
    budget: u64,
}

impl Search<'_> {
    fn level(&mut self, li: usize) -> Result<bool, OracleError> {
        if li == self.levels.len() {
            return Ok(true);
        }
        let mut placed = Vec::with_capacity(self.levels[li].active.len());
        let mut remaining = self.levels[li].active.clone();
        self.place(li, &mut placed, &mut remaining)
    }

    fn place(
        &mut self,
        li: usize,
        placed: &mut Vec<VertexIx>,
        remaining: &mut Vec<VertexIx>,
    ) -> Result<bool, OracleError> {
        if remaining.is_empty() {
            if self.dead[li].contains(placed) {
                return Ok(false);
            }
            if self.level(li + 1)? {
                return Ok(true);
            }
            self.dead[li].insert(placed.clone());
            return Ok(false);
        }
        for k in 0..remaining.len() {
            self.used += 1;
            if self.used > self.budget {
                return Err(OracleError::BudgetExceeded(self.budget));
            }
            let v = remaining[k];
            let p = placed.len();
            if self.levels[li].has_below && self.crosses(v, placed) {
                continue;
            }
            self.pos[v] = p;
            placed.push(v);
            remaining.remove(k);
            let found = self.place(li, placed, remaining)?;
            remaining.insert(k, v);
            placed.pop();
            if found {
                return Ok(true);
            }
            self.pos[v] = usize::MAX;
        }
        Ok(false)
    }

    /// Whether putting `v` right of every vertex in `placed`
    /// creates a crossing with the level below.
    fn crosses(&self, v: VertexIx, placed: &[VertexIx]) -> bool {
        let g = self.graph;
        g.down(v).iter().any(|&w| {
            placed.iter().any(|&x| {
                g.down(x)
                    .iter()
                    .any(|&y| y != w && self.pos[y] > self.pos[w])
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub levels: RangeInclusive<u32>,
    pub width: RangeInclusive<usize>,
    pub edge_probability: f64,
    pub seed: u64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("empty level-count range")]
    EmptyLevels,
    #[error("empty width range")]
    EmptyWidth,
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.levels.is_empty() || *self.levels.start() == 0 {
            return Err(ConfigError::EmptyLevels);
        }
        if self.width.is_empty() || *self.width.start() == 0 {
            return Err(ConfigError::EmptyWidth);
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(ConfigError::Probability(self.edge_probability));
        }
        Ok(())
    }
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            levels: 2..=5,
            width: 1..=5,
            edge_probability: 0.35,
            seed: 0,
        }
    }
}

/// `a`, `b`, ..., `z`, `aa`, `ab`, ...
fn letters(mut i: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Vertex `i` of level `l` is named `letters(i)` followed by `l`. Every
/// adjacent-level vertex pair becomes an edge independently.
pub fn random_proper_graph(config: &GeneratorConfig) -> Result<ProperLevelGraph, ConfigError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let level_count = rng.gen_range(config.levels.clone());
    let mut vertices = Vec::new();
    let mut per_level: Vec<Vec<String>> = Vec::new();
    for l in 1..=level_count {
        let w = rng.gen_range(config.width.clone());
        let ids: Vec<String> = (0..w).map(|i| format!("{}{}", letters(i), l)).collect();
        vertices.extend(ids.iter().map(|id| Vertex::new(id.clone(), l)));
        per_level.push(ids);
    }
    let mut edges = Vec::new();
    for pair in per_level.windows(2) {
        for a in &pair[0] {
            for b in &pair[1] {
                if rng.gen_bool(config.edge_probability) {
                    edges.push(Edge::new(a.clone(), b.clone()));
                }
            }
        }
    }
    Ok(
        ProperLevelGraph::new(&LevelGraph::new(vertices, edges))
            .expect("generated graph is proper"),
    )
}
