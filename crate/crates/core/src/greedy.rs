//! Greedy class assignment with per-level transitive closure.
//!
//! Both the 2-SAT embedder and the ve-graph component embedder reduce to the
//! same loop over a partition of the pair universe into classes. Every pair
//! `p` has a base value; assigning its class the decision `d` orders the pair
//! as `first < second` iff `base(p) XOR d`. The loop:
//!
//! 1. applies pending closure-forced pair orders (FIFO), each of which
//!    assigns that pair's whole class;
//! 2. otherwise assigns the next unassigned class chosen by the policy;
//! 3. stops with a contradiction as soon as a class demands a pair order
//!    whose reverse is already in the per-level relation;
//! 4. returns the induced drawing once every class is assigned.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::drawing::{Drawing, DrawingError};
use crate::graph::{ProperLevelGraph, VertexIx};
use crate::pairs::{PairId, PairLiteral, PairUniverse};

/// How free choices are made.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum GreedyPolicy {
    /// Lowest canonical representative first, default decision.
    #[default]
    Canonical,
    /// Classes in a seeded random order, default decision.
    Seeded(u64),
    /// Explicit picks: each literal names a class by any member, and the
    /// boolean is the value of that literal. Once the list is exhausted the
    /// canonical rule takes over. Entries whose class is already assigned
    /// when their turn comes are skipped.
    Replay(Vec<(PairLiteral, bool)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cause {
    FreeChoice,
    /// Closure derived this (oriented) pair order before its class was set.
    ClosureForced(PairLiteral),
}

/// One class assignment. `literal` is the class representative oriented by
/// the value it received.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub literal: PairLiteral,
    pub cause: Cause,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.cause {
            Cause::FreeChoice => write!(f, "free {}", self.literal),
            Cause::ClosureForced(by) => write!(f, "forced {} by closure {}", self.literal, by),
        }
    }
}

/// Who put a pair order into the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Set by the class whose representative is given.
    Class(PairLiteral),
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    /// Representative of the class being assigned.
    pub class: PairLiteral,
    /// The pair order the class demanded.
    pub demanded: PairLiteral,
    /// How the reverse order got into the relation.
    pub existing: Origin,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let how = match &self.existing {
            Origin::Class(c) => format!("class {c} already set"),
            Origin::Closure => "closure already derived".to_string(),
        };
        write!(
            f,
            "class {} demands {} but {} {}",
            self.class,
            self.demanded,
            how,
            self.demanded.negated()
        )
    }
}

/// The assignments of a failed run and the step that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub conflict: Conflict,
}

impl Trace {
    pub fn free_choices(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.cause == Cause::FreeChoice)
            .count()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {}: {}", i + 1, s)?;
        }
        write!(f, "conflict: {}", self.conflict)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedOutcome {
    Success(Drawing),
    Contradiction(Trace),
}

impl EmbedOutcome {
    pub fn drawing(&self) -> Option<&Drawing> {
        match self {
            EmbedOutcome::Success(d) => Some(d),
            EmbedOutcome::Contradiction(_) => None,
        }
    }

    pub fn trace(&self) -> Option<&Trace> {
        match self {
            EmbedOutcome::Success(_) => None,
            EmbedOutcome::Contradiction(t) => Some(t),
        }
    }

    pub fn is_contradiction(&self) -> bool {
        matches!(self, EmbedOutcome::Contradiction(_))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("constraint system is unsatisfiable; the graph is not level planar")]
    Unsatisfiable,
    #[error("vertex exchange graph has an odd-labeled cycle; the graph is not level planar")]
    OddCycle,
    #[error("bad replay: {0}")]
    Replay(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// A partition of the pair universe into classes with per-pair base values.
#[derive(Clone, Debug)]
pub struct ClassSet {
    /// Members of each class, `(pair, base)`; the first member is the
    /// representative (smallest pair id). Classes are sorted by representative.
    pub classes: Vec<Vec<(PairId, bool)>>,
    /// `(class, base)` per pair.
    pub class_of: Vec<(usize, bool)>,
}

impl ClassSet {
    /// Builds the set from a labelling `pair -> (group key, base)`, renumbering
    /// groups in order of their smallest pair.
    pub fn from_groups(groups: &[(usize, bool)]) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let mut classes: Vec<Vec<(PairId, bool)>> = Vec::new();
        let mut class_of = Vec::with_capacity(groups.len());
        for (p, &(key, base)) in groups.iter().enumerate() {
            let c = *renumber.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push((p, base));
            class_of.push((c, base));
        }
        ClassSet { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

struct LevelRelation {
    start: VertexIx,
    width: usize,
    before: Vec<bool>,
}

impl LevelRelation {
    fn get(&self, a: VertexIx, b: VertexIx) -> bool {
        self.before[(a - self.start) * self.width + (b - self.start)]
    }

    fn set(&mut self, a: VertexIx, b: VertexIx) {
        self.before[(a - self.start) * self.width + (b - self.start)] = true;
    }
}

struct Run<'a> {
    graph: &'a ProperLevelGraph,
    universe: &'a PairUniverse,
    classes: &'a ClassSet,
    relations: Vec<LevelRelation>,
    level_of_vertex: Vec<usize>,
    origin: Vec<Option<Origin>>,
    assigned: Vec<bool>,
    queue: VecDeque<(PairId, bool)>,
    steps: Vec<Step>,
}

impl<'a> Run<'a> {
    fn new(graph: &'a ProperLevelGraph, universe: &'a PairUniverse, classes: &'a ClassSet) -> Self {
        let mut relations = Vec::new();
        let mut level_of_vertex = vec![0; graph.vertex_count()];
        for (i, (_, range)) in graph.level_ranges().enumerate() {
            for v in range.clone() {
                level_of_vertex[v] = i;
            }
            relations.push(LevelRelation {
                start: range.start,
                width: range.len(),
                before: vec![false; range.len() * range.len()],
            });
        }
        Run {
            graph,
            universe,
            classes,
            relations,
            level_of_vertex,
            origin: vec![None; universe.len()],
            assigned: vec![false; classes.len()],
            queue: VecDeque::new(),
            steps: Vec::new(),
        }
    }

    fn oriented(&self, p: PairId, value: bool) -> PairLiteral {
        let lit = self.universe.name(self.graph, p);
        if value {
            lit
        } else {
            lit.negated()
        }
    }

    /// Current value of a pair in the relation, if decided.
    fn value(&self, p: PairId) -> Option<bool> {
        let pair = self.universe.pair(p);
        let rel = &self.relations[self.level_of_vertex[pair.first]];
        if rel.get(pair.first, pair.second) {
            Some(true)
        } else if rel.get(pair.second, pair.first) {
            Some(false)
        } else {
            None
        }
    }

    #[allow(clippy::result_large_err)]
    fn assign(&mut self, class: usize, decision: bool, cause: Cause) -> Result<(), Conflict> {
        let (rep, rep_base) = self.classes.classes[class][0];
        let rep_lit = self.universe.name(self.graph, rep);
        self.steps.push(Step {
            literal: self.oriented(rep, rep_base ^ decision),
            cause,
        });
        self.assigned[class] = true;
        let classes = self.classes;
        for &(p, base) in &classes.classes[class] {
            let value = base ^ decision;
            match self.value(p) {
                Some(v) if v == value => {}
                Some(_) => {
                    return Err(Conflict {
                        class: rep_lit,
                        demanded: self.oriented(p, value),
                        existing: self.origin[p].clone().expect("decided pair has an origin"),
                    })
                }
                None => self.insert(p, value, Origin::Class(rep_lit.clone())),
            }
        }
        Ok(())
    }

    /// Adds a pair order and everything it implies by transitivity. The
    /// relation stays transitively closed and antisymmetric.
    fn insert(&mut self, p: PairId, value: bool, origin: Origin) {
        let pair = self.universe.pair(p);
        let (a, b) = if value {
            (pair.first, pair.second)
        } else {
            (pair.second, pair.first)
        };
        let li = self.level_of_vertex[a];
        self.relations[li].set(a, b);
        self.origin[p] = Some(origin);

        let rel = &self.relations[li];
        let range = rel.start..rel.start + rel.width;
        let left: Vec<VertexIx> = range.clone().filter(|&x| x == a || rel.get(x, a)).collect();
        let right: Vec<VertexIx> = range.filter(|&y| y == b || rel.get(b, y)).collect();
        for &x in &left {
            for &y in &right {
                if self.relations[li].get(x, y) {
                    continue;
                }
                debug_assert!(!self.relations[li].get(y, x));
                self.relations[li].set(x, y);
                let (q, pol) = self.universe.literal(x, y).expect("same-level pair");
                self.origin[q] = Some(Origin::Closure);
                if !self.assigned[self.classes.class_of[q].0] {
                    self.queue.push_back((q, pol));
                }
            }
        }
    }

    fn drawing(&self) -> Drawing {
        let mut pos = vec![0; self.graph.vertex_count()];
        for rel in &self.relations {
            let range = rel.start..rel.start + rel.width;
            for (v, p) in pos[range.clone()].iter_mut().enumerate() {
                *p = range.clone().filter(|&x| rel.get(x, rel.start + v)).count();
            }
        }
        Drawing::from_positions(self.graph, &pos)
    }
}

/// Resolves a replay list into `(class, decision)` picks.
fn resolve_replay(
    graph: &ProperLevelGraph,
    universe: &PairUniverse,
    classes: &ClassSet,
    list: &[(PairLiteral, bool)],
) -> Result<Vec<(usize, bool)>, EmbedError> {
    let mut seen = vec![false; classes.len()];
    let mut out = Vec::with_capacity(list.len());
    for (lit, value) in list {
        let (p, pol) = universe
            .resolve(graph, lit)
            .ok_or_else(|| EmbedError::Replay(format!("unknown pair {lit}")))?;
        let (c, base) = classes.class_of[p];
        if std::mem::replace(&mut seen[c], true) {
            return Err(EmbedError::Replay(format!("class of {lit} named twice")));
        }
        out.push((c, (value == &pol) ^ base));
    }
    Ok(out)
}

/// Runs the greedy loop.
pub fn run_greedy(
    graph: &ProperLevelGraph,
    universe: &PairUniverse,
    classes: &ClassSet,
    policy: &GreedyPolicy,
) -> Result<EmbedOutcome, EmbedError> {
    let (picks, fallback): (Vec<(usize, bool)>, Vec<usize>) = match policy {
        GreedyPolicy::Canonical => (Vec::new(), (0..classes.len()).collect()),
        GreedyPolicy::Seeded(seed) => {
            let mut order: Vec<usize> = (0..classes.len()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
            (Vec::new(), order)
        }
        GreedyPolicy::Replay(list) => (
            resolve_replay(graph, universe, classes, list)?,
            (0..classes.len()).collect(),
        ),
    };
    let mut picks = picks
        .into_iter()
        .chain(fallback.into_iter().map(|c| (c, false)));

    let mut run = Run::new(graph, universe, classes);
    loop {
        let result = if let Some((p, value)) = run.queue.pop_front() {
            let (c, base) = classes.class_of[p];
            if run.assigned[c] {
                continue;
            }
            let by = run.oriented(p, value);
            run.assign(c, value ^ base, Cause::ClosureForced(by))
        } else {
            match picks.by_ref().find(|&(c, _)| !run.assigned[c]) {
                Some((c, decision)) => run.assign(c, decision, Cause::FreeChoice),
                None => break,
            }
        };
        if let Err(conflict) = result {
            return Ok(EmbedOutcome::Contradiction(Trace {
                steps: run.steps,
                conflict,
            }));
        }
    }
    Ok(EmbedOutcome::Success(run.drawing()))
}
