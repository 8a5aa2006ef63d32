//! Pair-order 2-SAT: one variable `(a<b)` per same-level pair, one
//! equivalence `(u<x) <=> (v<y)` per pair of independent edges between the
//! same two levels.
//!
//! All constraints are equivalences (antisymmetry is carried by literal
//! polarity), so a union-find with parity decides satisfiability and yields
//! the equivalence classes directly.

use thiserror::Error;

use crate::drawing::Drawing;
use crate::graph::ProperLevelGraph;
use crate::greedy::{run_greedy, ClassSet, EmbedError, EmbedOutcome, GreedyPolicy};
use crate::pairs::{PairId, PairUniverse};

/// Union-find where every element stores its parity relative to its parent.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
            rank: vec![0; n],
        }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= par;
        (root, self.parity[x])
    }

    /// Records `x == y XOR opposite`. Returns `false` if this contradicts what
    /// is already known.
    pub fn union(&mut self, x: usize, y: usize, opposite: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == opposite;
        }
        let (child, root) = if self.rank[rx] < self.rank[ry] {
            (rx, ry)
        } else {
            (ry, rx)
        };
        self.parent[child] = root;
        self.parity[child] = px ^ py ^ opposite;
        if self.rank[rx] == self.rank[ry] {
            self.rank[root] += 1;
        }
        true
    }
}

/// `left <=> right` (or `left <=> !right` when `opposite`), induced by the
/// independent edges `edges` (indices into the graph's edge list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    /// Pair on the upper of the two levels.
    pub left: PairId,
    /// Pair on the lower level.
    pub right: PairId,
    pub opposite: bool,
    pub edges: (usize, usize),
    /// Whether the system was still consistent after this merge.
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    universe: PairUniverse,
    relations: Vec<Relation>,
    classes: ParityUnionFind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("constraint system is contradictory")]
pub struct Contradictory;

/// One equivalence class; `members[0]` is the representative and every
/// member carries its parity relative to it (`true` = opposite).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub members: Vec<(PairId, bool)>,
}

impl EquivalenceClass {
    pub fn representative(&self) -> PairId {
        self.members[0].0
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn build_constraints(graph: &ProperLevelGraph) -> ConstraintSystem {
    let universe = PairUniverse::new(graph);
    let mut classes = ParityUnionFind::new(universe.len());
    let mut relations = Vec::new();
    let mut consistent = true;
    let edges = graph.edges();
    for (i, j) in graph.independent_edge_pairs() {
        let ((v, u), (y, x)) = (edges[i], edges[j]);
        let (left, lp) = universe.literal(u, x).expect("same-level upper pair");
        let (right, rp) = universe.literal(v, y).expect("same-level lower pair");
        let opposite = lp != rp;
        consistent &= classes.union(left, right, opposite);
        relations.push(Relation {
            left,
            right,
            opposite,
            edges: (i, j),
            consistent,
        });
    }
    ConstraintSystem {
        universe,
        relations,
        classes,
    }
}

impl ConstraintSystem {
    pub fn universe(&self) -> &PairUniverse {
        &self.universe
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn satisfiable(&self) -> bool {
        self.relations.last().is_none_or(|r| r.consistent)
    }

    /// Classes sorted by representative (the smallest pair in the class).
    pub fn equivalence_classes(&self) -> Result<Vec<EquivalenceClass>, Contradictory> {
        if !self.satisfiable() {
            return Err(Contradictory);
        }
        let mut uf = self.classes.clone();
        let mut by_root: Vec<Option<usize>> = vec![None; self.universe.len()];
        let mut out: Vec<EquivalenceClass> = Vec::new();
        let mut rep_parity = Vec::new();
        for p in 0..self.universe.len() {
            let (root, par) = uf.find(p);
            match by_root[root] {
                Some(c) => out[c].members.push((p, par ^ rep_parity[c])),
                None => {
                    by_root[root] = Some(out.len());
                    rep_parity.push(par);
                    out.push(EquivalenceClass {
                        members: vec![(p, false)],
                    });
                }
            }
        }
        Ok(out)
    }

    /// Classes as consumed by the greedy loop: deciding `false` orders the
    /// representative positively.
    pub fn class_set(&self) -> Result<ClassSet, Contradictory> {
        let classes = self.equivalence_classes()?;
        let mut groups = vec![(0, false); self.universe.len()];
        for (c, class) in classes.iter().enumerate() {
            for &(p, opposite) in &class.members {
                groups[p] = (c, !opposite);
            }
        }
        Ok(ClassSet::from_groups(&groups))
    }
}

/// `satisfiable(build_constraints(graph))`.
pub fn satisfiable(graph: &ProperLevelGraph) -> bool {
    build_constraints(graph).satisfiable()
}

/// The greedy embedder: assigns 2-SAT classes one by one, giving priority to
/// pair orders forced by per-level transitive closure.
pub fn greedy_embed(
    graph: &ProperLevelGraph,
    policy: &GreedyPolicy,
) -> Result<EmbedOutcome, EmbedError> {
    let system = build_constraints(graph);
    let classes = system.class_set().map_err(|_| EmbedError::Unsatisfiable)?;
    run_greedy(graph, system.universe(), &classes, policy)
}

/// Checks that a drawing orders the pairs of every class consistently with
/// the class parities.
pub fn respects_classes(
    graph: &ProperLevelGraph,
    system: &ConstraintSystem,
    drawing: &Drawing,
) -> bool {
    let Ok(pos) = drawing.positions(graph) else {
        return false;
    };
    let Ok(classes) = system.equivalence_classes() else {
        return false;
    };
    let u = system.universe();
    classes.iter().all(|class| {
        let rep = u.pair(class.representative());
        let rep_val = pos[rep.first] < pos[rep.second];
        class.members.iter().all(|&(p, opposite)| {
            let pair = u.pair(p);
            (pos[pair.first] < pos[pair.second]) == (rep_val ^ opposite)
        })
    })
}
