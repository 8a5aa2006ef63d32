//! Same-level vertex pairs: the variables `(a<b)` shared by the 2-SAT
//! formulation and the vertex exchange graph.

use std::collections::HashMap;
use std::fmt;

use crate::graph::{ProperLevelGraph, VertexIx};

/// Index into a [`PairUniverse`].
pub type PairId = usize;

/// A canonical pair `first < second` of vertex indices on one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub first: VertexIx,
    pub second: VertexIx,
}

/// Every canonical same-level pair of a graph, in `(level, first, second)`
/// order. Since vertex indices follow `(level, id)` order this is also the
/// lexicographic order of the pairs' names.
#[derive(Clone, Debug)]
pub struct PairUniverse {
    pairs: Vec<Pair>,
    index: HashMap<Pair, PairId>,
}

impl PairUniverse {
    pub fn new(graph: &ProperLevelGraph) -> Self {
        let mut pairs = Vec::new();
        for (_, range) in graph.level_ranges() {
            for a in range.clone() {
                for b in a + 1..range.end {
                    pairs.push(Pair {
                        first: a,
                        second: b,
                    });
                }
            }
        }
        let index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        PairUniverse { pairs, index }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, id: PairId) -> Pair {
        self.pairs[id]
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    /// The pair of two distinct same-level vertices, with the polarity of the
    /// literal `a < b`: `true` when `a` is the canonical first vertex.
    pub fn literal(&self, a: VertexIx, b: VertexIx) -> Option<(PairId, bool)> {
        let (p, pol) = if a < b {
            (
                Pair {
                    first: a,
                    second: b,
                },
                true,
            )
        } else {
            (
                Pair {
                    first: b,
                    second: a,
                },
                false,
            )
        };
        self.index.get(&p).map(|&id| (id, pol))
    }

    pub fn find(&self, first: VertexIx, second: VertexIx) -> Option<PairId> {
        self.index.get(&Pair { first, second }).copied()
    }

    /// Resolves a named literal against the graph: the pair id and the
    /// polarity of `literal.first < literal.second`.
    pub fn resolve(
        &self,
        graph: &ProperLevelGraph,
        literal: &PairLiteral,
    ) -> Option<(PairId, bool)> {
        let a = graph.lookup(&literal.first)?;
        let b = graph.lookup(&literal.second)?;
        if graph.level(a) != literal.level || graph.level(b) != literal.level {
            return None;
        }
        self.literal(a, b)
    }

    /// The canonical literal naming a pair.
    pub fn name(&self, graph: &ProperLevelGraph, id: PairId) -> PairLiteral {
        let p = self.pairs[id];
        PairLiteral::new(graph.level(p.first), graph.id(p.first), graph.id(p.second))
    }
}

/// A named pair literal `level:first<second`, independent of any particular
/// graph indexing. Replay files and traces use this form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairLiteral {
    pub level: u32,
    pub first: String,
    pub second: String,
}

impl PairLiteral {
    pub fn new(level: u32, first: impl Into<String>, second: impl Into<String>) -> Self {
        PairLiteral {
            level,
            first: first.into(),
            second: second.into(),
        }
    }

    /// `(b<a)` for `(a<b)`.
    pub fn negated(&self) -> Self {
        PairLiteral::new(self.level, self.second.clone(), self.first.clone())
    }

    pub fn is_canonical(&self) -> bool {
        self.first < self.second
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.negated()
        }
    }

    /// Parses `level:first<second`.
    pub fn parse(s: &str) -> Option<Self> {
        let (level, rest) = s.split_once(':')?;
        let (first, second) = rest.split_once('<')?;
        let level = level.parse().ok()?;
        if first.is_empty() || second.is_empty() || first == second {
            return None;
        }
        Some(PairLiteral::new(level, first, second))
    }
}

impl fmt::Display for PairLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}<{}", self.level, self.first, self.second)
    }
}
