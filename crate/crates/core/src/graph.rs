//! Level graphs, validation and properization.
//!
//! A [`LevelGraph`] is the raw input object: vertices with a level and edges
//! between vertices of distinct levels. It can hold invalid data (so that
//! parsers can report every problem at once); [`LevelGraph::validate`] lists
//! the violations. A [`ProperLevelGraph`] is always valid, every edge spans
//! exactly one level, and it carries the index structures the algorithms use.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use thiserror::Error;

/// Index of a vertex inside a [`ProperLevelGraph`].
///
/// Vertices are indexed in `(level, id)` order, so the vertices of one level
/// occupy a contiguous range and index order agrees with id order.
pub type VertexIx = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub id: String,
    pub level: u32,
}

impl Vertex {
    pub fn new(id: impl Into<String>, level: u32) -> Self {
        Vertex {
            id: id.into(),
            level,
        }
    }
}

/// An edge as written in the input. Once both endpoints are known and on
/// distinct levels, `lower` is the endpoint with the smaller level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lower: String,
    pub upper: String,
}

impl Edge {
    pub fn new(lower: impl Into<String>, upper: impl Into<String>) -> Self {
        Edge {
            lower: lower.into(),
            upper: upper.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    InvalidId(String),
    NonPositiveLevel(String),
    DuplicateVertex(String),
    UnknownEndpoint { edge: (String, String), id: String },
    SelfLoop(String),
    SameLevelEdge { edge: (String, String), level: u32 },
    DuplicateEdge(String, String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidId(id) => write!(f, "invalid vertex id {id:?}"),
            Violation::NonPositiveLevel(id) => write!(f, "vertex {id} has a non-positive level"),
            Violation::DuplicateVertex(id) => write!(f, "duplicate vertex {id}"),
            Violation::UnknownEndpoint { edge, id } => {
                write!(f, "edge {}-{} has unknown endpoint {id}", edge.0, edge.1)
            }
            Violation::SelfLoop(id) => write!(f, "self-loop at {id}"),
            Violation::SameLevelEdge { edge, level } => {
                write!(f, "same-level edge {}-{} on level {level}", edge.0, edge.1)
            }
            Violation::DuplicateEdge(a, b) => write!(f, "duplicate edge {a}-{b}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid level graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("edge {0}-{1} does not join adjacent levels")]
    NotProper(String, String),
    #[error("dummy vertex id {0} collides with an existing vertex")]
    DummyCollision(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-'))
}

/// A level graph `G = (V, E)` with level assignment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl LevelGraph {
    /// Builds a graph without checking it. Edges whose endpoints are both
    /// known are normalized so that `lower` has the smaller level.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        let levels: HashMap<&str, u32> =
            vertices.iter().map(|v| (v.id.as_str(), v.level)).collect();
        let edges = edges
            .into_iter()
            .map(
                |e| match (levels.get(e.lower.as_str()), levels.get(e.upper.as_str())) {
                    (Some(a), Some(b)) if a > b => Edge {
                        lower: e.upper,
                        upper: e.lower,
                    },
                    _ => e,
                },
            )
            .collect();
        LevelGraph { vertices, edges }
    }

    /// Convenience constructor used heavily in tests and examples.
    pub fn from_slices(vertices: &[(&str, u32)], edges: &[(&str, &str)]) -> Self {
        LevelGraph::new(
            vertices.iter().map(|&(id, l)| Vertex::new(id, l)).collect(),
            edges.iter().map(|&(a, b)| Edge::new(a, b)).collect(),
        )
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn level_of(&self, id: &str) -> Option<u32> {
        self.vertices.iter().find(|v| v.id == id).map(|v| v.level)
    }

    /// Lists every invariant violation; empty iff the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut levels: HashMap<&str, u32> = HashMap::new();
        for v in &self.vertices {
            if !is_valid_id(&v.id) {
                out.push(Violation::InvalidId(v.id.clone()));
            }
            if v.level == 0 {
                out.push(Violation::NonPositiveLevel(v.id.clone()));
            }
            if levels.insert(&v.id, v.level).is_some() {
                out.push(Violation::DuplicateVertex(v.id.clone()));
            }
        }
        let mut seen: BTreeSet<(&str, &str)> = BTreeSet::new();
        for e in &self.edges {
            let pair = (e.lower.clone(), e.upper.clone());
            let mut known = true;
            for id in [&e.lower, &e.upper] {
                if !levels.contains_key(id.as_str()) {
                    out.push(Violation::UnknownEndpoint {
                        edge: pair.clone(),
                        id: id.clone(),
                    });
                    known = false;
                }
            }
            if e.lower == e.upper {
                out.push(Violation::SelfLoop(e.lower.clone()));
                continue;
            }
            if known && levels[e.lower.as_str()] == levels[e.upper.as_str()] {
                out.push(Violation::SameLevelEdge {
                    edge: pair.clone(),
                    level: levels[e.lower.as_str()],
                });
            }
            let key = if e.lower < e.upper {
                (e.lower.as_str(), e.upper.as_str())
            } else {
                (e.upper.as_str(), e.lower.as_str())
            };
            if !seen.insert(key) {
                out.push(Violation::DuplicateEdge(e.lower.clone(), e.upper.clone()));
            }
        }
        out
    }

    pub fn is_proper(&self) -> bool {
        self.edges.iter().all(
            |e| match (self.level_of(&e.lower), self.level_of(&e.upper)) {
                (Some(a), Some(b)) => b == a + 1,
                _ => false,
            },
        )
    }

    /// Returns a copy with vertices sorted by `(level, id)` and edges sorted
    /// lexicographically, the order used by serialization.
    pub fn canonical(&self) -> LevelGraph {
        let mut vertices = self.vertices.clone();
        vertices.sort_by(|a, b| (a.level, &a.id).cmp(&(b.level, &b.id)));
        let mut edges = self.edges.clone();
        edges.sort();
        LevelGraph { vertices, edges }
    }
}

/// Where a dummy vertex came from: the original edge it subdivides and its
/// position along that edge, counted from 1 at the level above `lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DummyOrigin {
    pub edge: Edge,
    pub position: u32,
}

pub fn dummy_id(lower: &str, upper: &str, k: u32) -> String {
    format!("{lower}__{upper}__{k}")
}

/// A valid level graph whose edges all join adjacent levels, with the index
/// structures shared by the oracle, the constraint builders and the embedders.
#[derive(Clone, Debug)]
pub struct ProperLevelGraph {
    /// Sorted by `(level, id)`.
    vertices: Vec<Vertex>,
    /// `(lower, upper)` vertex indices, sorted.
    edges: Vec<(VertexIx, VertexIx)>,
    index: HashMap<String, VertexIx>,
    level_ranges: BTreeMap<u32, Range<VertexIx>>,
    up: Vec<Vec<VertexIx>>,
    down: Vec<Vec<VertexIx>>,
    dummies: BTreeMap<String, DummyOrigin>,
}

impl PartialEq for ProperLevelGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.dummies == other.dummies
    }
}

impl Eq for ProperLevelGraph {}

impl ProperLevelGraph {
    /// Wraps a graph that must already be valid and proper.
    pub fn new(graph: &LevelGraph) -> Result<Self, GraphError> {
        Self::with_dummies(graph, BTreeMap::new())
    }

    fn with_dummies(
        graph: &LevelGraph,
        dummies: BTreeMap<String, DummyOrigin>,
    ) -> Result<Self, GraphError> {
        let violations = graph.validate();
        if !violations.is_empty() {
            return Err(GraphError::Invalid(violations));
        }
        let canonical = graph.canonical();
        let vertices = canonical.vertices;
        let index: HashMap<String, VertexIx> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        let mut edges = Vec::with_capacity(canonical.edges.len());
        for e in &canonical.edges {
            let (a, b) = (index[&e.lower], index[&e.upper]);
            if vertices[b].level != vertices[a].level + 1 {
                return Err(GraphError::NotProper(e.lower.clone(), e.upper.clone()));
            }
            edges.push((a, b));
        }
        edges.sort_unstable();
        let mut level_ranges: BTreeMap<u32, Range<VertexIx>> = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            level_ranges
                .entry(v.level)
                .and_modify(|r| r.end = i + 1)
                .or_insert(i..i + 1);
        }
        let mut up = vec![Vec::new(); vertices.len()];
        let mut down = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            up[a].push(b);
            down[b].push(a);
        }
        Ok(ProperLevelGraph {
            vertices,
            edges,
            index,
            level_ranges,
            up,
            down,
            dummies,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: VertexIx) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn id(&self, v: VertexIx) -> &str {
        &self.vertices[v].id
    }

    pub fn level(&self, v: VertexIx) -> u32 {
        self.vertices[v].level
    }

    pub fn lookup(&self, id: &str) -> Option<VertexIx> {
        self.index.get(id).copied()
    }

    /// Edges as `(lower, upper)` index pairs in sorted order.
    pub fn edges(&self) -> &[(VertexIx, VertexIx)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbours one level up.
    pub fn up(&self, v: VertexIx) -> &[VertexIx] {
        &self.up[v]
    }

    /// Neighbours one level down.
    pub fn down(&self, v: VertexIx) -> &[VertexIx] {
        &self.down[v]
    }

    pub fn degree(&self, v: VertexIx) -> usize {
        self.up[v].len() + self.down[v].len()
    }

    /// Nonempty levels in ascending order.
    pub fn levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.level_ranges.keys().copied()
    }

    pub fn level_range(&self, level: u32) -> Range<VertexIx> {
        self.level_ranges.get(&level).cloned().unwrap_or(0..0)
    }

    pub fn level_ranges(&self) -> impl Iterator<Item = (u32, Range<VertexIx>)> + '_ {
        self.level_ranges.iter().map(|(&l, r)| (l, r.clone()))
    }

    pub fn dummies(&self) -> &BTreeMap<String, DummyOrigin> {
        &self.dummies
    }

    pub fn is_dummy(&self, v: VertexIx) -> bool {
        self.dummies.contains_key(&self.vertices[v].id)
    }

    /// The plain level graph, in canonical order. The dummy map is dropped.
    pub fn to_level_graph(&self) -> LevelGraph {
        LevelGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| Edge::new(self.id(a), self.id(b)))
                .collect(),
        }
    }

    /// Unordered pairs of edges between the same two levels that share no
    /// endpoint, in lexicographic order of edge indices.
    pub fn independent_edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            for (j, &(c, d)) in self.edges.iter().enumerate().skip(i + 1) {
                if self.vertices[a].level == self.vertices[c].level && a != c && b != d {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Subdivides every edge spanning more than one level with one dummy vertex
/// per intermediate level.
pub fn make_proper(graph: &LevelGraph) -> Result<ProperLevelGraph, GraphError> {
    let violations = graph.validate();
    if !violations.is_empty() {
        return Err(GraphError::Invalid(violations));
    }
    let levels: HashMap<&str, u32> = graph
        .vertices
        .iter()
        .map(|v| (v.id.as_str(), v.level))
        .collect();
    let mut vertices = graph.vertices.clone();
    let mut edges = Vec::new();
    let mut dummies = BTreeMap::new();
    for e in &graph.edges {
        let (lo, hi) = (levels[e.lower.as_str()], levels[e.upper.as_str()]);
        if hi == lo + 1 {
            edges.push(e.clone());
            continue;
        }
        let mut prev = e.lower.clone();
        for k in 1..hi - lo {
            let id = dummy_id(&e.lower, &e.upper, k);
            if levels.contains_key(id.as_str()) || dummies.contains_key(&id) {
                return Err(GraphError::DummyCollision(id));
            }
            vertices.push(Vertex::new(id.clone(), lo + k));
            edges.push(Edge::new(prev, id.clone()));
            dummies.insert(
                id.clone(),
                DummyOrigin {
                    edge: e.clone(),
                    position: k,
                },
            );
            prev = id;
        }
        edges.push(Edge::new(prev, e.upper.clone()));
    }
    ProperLevelGraph::with_dummies(&LevelGraph { vertices, edges }, dummies)
}
