//! Vertex exchange graphs.
//!
//! Nodes are the canonical same-level pairs; every unordered pair of
//! independent edges between the same two levels links the pair of their
//! upper endpoints with the pair of their lower endpoints. Against a
//! reference drawing a link is labeled `-` when its two edges cross there and
//! `+` otherwise. A node is "swapped" when its order differs from the
//! reference; along a link, swap flags differ exactly when the label is `-`.

use std::fmt;

use crate::drawing::{Drawing, DrawingError};
use crate::graph::ProperLevelGraph;
use crate::greedy::{run_greedy, ClassSet, EmbedError, EmbedOutcome, GreedyPolicy};
use crate::pairs::{PairId, PairLiteral, PairUniverse};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Link {
    /// Pair of the upper endpoints.
    pub upper: PairId,
    /// Pair of the lower endpoints.
    pub lower: PairId,
    /// The inducing edges, as indices into the graph's edge list.
    pub edges: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct VeGraph {
    universe: PairUniverse,
    links: Vec<Link>,
    incident: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Plus,
    Minus,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Plus => "+",
            Label::Minus => "-",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LabeledVeGraph {
    ve: VeGraph,
    labels: Vec<Label>,
    reference: Drawing,
    reference_pos: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleVerdict {
    Consistent,
    /// Links of a cycle with an odd number of `-` labels.
    OddCycle(Vec<usize>),
}

pub fn build_ve_graph(graph: &ProperLevelGraph) -> VeGraph {
    let universe = PairUniverse::new(graph);
    let edges = graph.edges();
    let mut links = Vec::new();
    let mut incident = vec![Vec::new(); universe.len()];
    for (i, j) in graph.independent_edge_pairs() {
        let ((v, u), (y, x)) = (edges[i], edges[j]);
        let (upper, _) = universe.literal(u, x).expect("same-level upper pair");
        let (lower, _) = universe.literal(v, y).expect("same-level lower pair");
        incident[upper].push(links.len());
        incident[lower].push(links.len());
        links.push(Link {
            upper,
            lower,
            edges: (i, j),
        });
    }
    VeGraph {
        universe,
        links,
        incident,
    }
}

impl VeGraph {
    pub fn universe(&self) -> &PairUniverse {
        &self.universe
    }

    pub fn node_count(&self) -> usize {
        self.universe.len()
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn incident(&self, node: PairId) -> &[usize] {
        &self.incident[node]
    }

    pub fn other_end(&self, link: usize, node: PairId) -> PairId {
        let l = self.links[link];
        if l.upper == node {
            l.lower
        } else {
            l.upper
        }
    }
}

pub fn label_ve_graph(
    graph: &ProperLevelGraph,
    ve: &VeGraph,
    drawing: &Drawing,
) -> Result<LabeledVeGraph, DrawingError> {
    let pos = drawing.positions(graph)?;
    let edges = graph.edges();
    let labels = ve
        .links
        .iter()
        .map(|l| {
            let (e, f) = (edges[l.edges.0], edges[l.edges.1]);
            if crate::drawing::edges_cross(&pos, e, f) {
                Label::Minus
            } else {
                Label::Plus
            }
        })
        .collect();
    Ok(LabeledVeGraph {
        ve: ve.clone(),
        labels,
        reference: drawing.clone(),
        reference_pos: pos,
    })
}

impl LabeledVeGraph {
    pub fn ve(&self) -> &VeGraph {
        &self.ve
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn reference(&self) -> &Drawing {
        &self.reference
    }

    fn is_minus(&self, link: usize) -> bool {
        self.labels[link] == Label::Minus
    }

    /// Whether the pair is ordered `first < second` in the reference drawing.
    pub fn reference_value(&self, node: PairId) -> bool {
        let p = self.ve.universe.pair(node);
        self.reference_pos[p.first] < self.reference_pos[p.second]
    }
}

/// Result of a DFS over every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapAssignment {
    /// Parity of the tree path from the component entry; with the entry
    /// unswapped this is the swap flag relative to the reference drawing.
    pub swapped: Vec<bool>,
    /// Component index per node, numbered in discovery order.
    pub component: Vec<usize>,
    /// Entry node per component.
    pub entries: Vec<PairId>,
    /// Tree link to the DFS parent; `None` for entries.
    pub parent_link: Vec<Option<usize>>,
    /// First non-tree link found whose label disagrees with the parities.
    pub conflict: Option<usize>,
}

/// Depth-first traversal starting components at `entries` first, then at the
/// remaining nodes in canonical order. Neighbours are visited in link order.
pub fn traverse(lve: &LabeledVeGraph, entries: &[PairId]) -> SwapAssignment {
    let n = lve.ve.node_count();
    let mut swapped = vec![false; n];
    let mut component = vec![usize::MAX; n];
    let mut parent_link = vec![None; n];
    let mut comp_entries = Vec::new();
    let mut conflict = None;
    let mut stack: Vec<(PairId, usize)> = Vec::new();
    for start in entries.iter().copied().chain(0..n) {
        if component[start] != usize::MAX {
            continue;
        }
        let c = comp_entries.len();
        comp_entries.push(start);
        component[start] = c;
        stack.push((start, 0));
        while let Some(top) = stack.last_mut() {
            let node = top.0;
            let Some(&link) = lve.ve.incident[node].get(top.1) else {
                stack.pop();
                continue;
            };
            top.1 += 1;
            let other = lve.ve.other_end(link, node);
            let want = swapped[node] ^ lve.is_minus(link);
            if component[other] == usize::MAX {
                component[other] = c;
                swapped[other] = want;
                parent_link[other] = Some(link);
                stack.push((other, 0));
            } else if swapped[other] != want && conflict.is_none() {
                conflict = Some(link);
            }
        }
    }
    SwapAssignment {
        swapped,
        component,
        entries: comp_entries,
        parent_link,
        conflict,
    }
}

fn path_to_root(
    lve: &LabeledVeGraph,
    t: &SwapAssignment,
    mut node: PairId,
) -> Vec<(PairId, usize)> {
    let mut out = Vec::new();
    while let Some(l) = t.parent_link[node] {
        out.push((node, l));
        node = lve.ve.other_end(l, node);
    }
    out
}

/// DFS test for odd-labeled cycles.
pub fn odd_cycle_test(lve: &LabeledVeGraph) -> CycleVerdict {
    let t = traverse(lve, &[]);
    let Some(bad) = t.conflict else {
        return CycleVerdict::Consistent;
    };
    let link = lve.ve.links[bad];
    let pa = path_to_root(lve, &t, link.upper);
    let pb = path_to_root(lve, &t, link.lower);
    // Strip the common suffix (shared ancestors) of the two root paths.
    let mut ka = pa.len();
    let mut kb = pb.len();
    while ka > 0 && kb > 0 && pa[ka - 1] == pb[kb - 1] {
        ka -= 1;
        kb -= 1;
    }
    let mut cycle: Vec<usize> = pa[..ka].iter().map(|&(_, l)| l).collect();
    cycle.extend(pb[..kb].iter().rev().map(|&(_, l)| l));
    cycle.push(bad);
    CycleVerdict::OddCycle(cycle)
}

fn consistent_traversal(
    graph: &ProperLevelGraph,
    reference: &Drawing,
    entries: &[PairLiteral],
) -> Result<(LabeledVeGraph, SwapAssignment), EmbedError> {
    let ve = build_ve_graph(graph);
    let lve = label_ve_graph(graph, &ve, reference)?;
    let mut entry_ids = Vec::new();
    for lit in entries {
        let (p, _) = ve
            .universe
            .resolve(graph, lit)
            .ok_or_else(|| EmbedError::Replay(format!("unknown ve-node {lit}")))?;
        if entry_ids.contains(&p) {
            return Err(EmbedError::Replay(format!("duplicate entry {lit}")));
        }
        entry_ids.push(p);
    }
    let t = traverse(&lve, &entry_ids);
    if t.conflict.is_some() {
        return Err(EmbedError::OddCycle);
    }
    // Entries given explicitly must start distinct components.
    for (i, &p) in entry_ids.iter().enumerate() {
        if t.entries.get(i) != Some(&p) {
            let lit = &entries[i];
            return Err(EmbedError::Replay(format!(
                "entry {lit} shares a component with an earlier entry"
            )));
        }
    }
    Ok((lve, t))
}

/// Component-swap embedder: every ve-component is a class whose decision is
/// whether its entry node is swapped relative to the reference drawing.
pub fn healy_kuusik_embed(
    graph: &ProperLevelGraph,
    reference: &Drawing,
    policy: &GreedyPolicy,
) -> Result<EmbedOutcome, EmbedError> {
    let (lve, t) = consistent_traversal(graph, reference, &[])?;
    let groups: Vec<(usize, bool)> = (0..lve.ve.node_count())
        .map(|p| (t.component[p], lve.reference_value(p) ^ t.swapped[p]))
        .collect();
    run_greedy(
        graph,
        &lve.ve.universe,
        &ClassSet::from_groups(&groups),
        policy,
    )
}

/// Replayable choices for the two-pass embedder.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HHChoices {
    /// DFS entry nodes, at most one per component. Components without one
    /// start at their smallest node.
    pub entries: Vec<PairLiteral>,
    /// Second-pass processing order. Nodes not listed follow in canonical order.
    pub process: Vec<PairLiteral>,
}

/// Output of the two-pass embedder with its first-pass state.
#[derive(Clone, Debug)]
pub struct HHResult {
    pub drawing: Drawing,
    pub swaps: SwapAssignment,
}

/// Two-pass embedder. Pass one marks each node swapped iff its DFS parity
/// from its component entry is odd. Pass two starts from the reference
/// drawing and visits every node once in processing order, exchanging the
/// slots of the node's two vertices whenever their current order differs from
/// the target (reference order XOR swap flag). The result is returned as is;
/// it need not be crossing-free.
pub fn harrigan_healy(
    graph: &ProperLevelGraph,
    reference: &Drawing,
    choices: &HHChoices,
) -> Result<HHResult, EmbedError> {
    let (lve, swaps) = consistent_traversal(graph, reference, &choices.entries)?;
    let universe = &lve.ve.universe;
    let mut order = Vec::with_capacity(universe.len());
    let mut listed = vec![false; universe.len()];
    for lit in &choices.process {
        let (p, _) = universe
            .resolve(graph, lit)
            .ok_or_else(|| EmbedError::Replay(format!("unknown ve-node {lit}")))?;
        if std::mem::replace(&mut listed[p], true) {
            return Err(EmbedError::Replay(format!("ve-node {lit} processed twice")));
        }
        order.push(p);
    }
    order.extend((0..universe.len()).filter(|&p| !listed[p]));

    let mut pos = lve.reference_pos.clone();
    for p in order {
        let pair = universe.pair(p);
        let target = lve.reference_value(p) ^ swaps.swapped[p];
        if (pos[pair.first] < pos[pair.second]) != target {
            pos.swap(pair.first, pair.second);
        }
    }
    Ok(HHResult {
        drawing: Drawing::from_positions(graph, &pos),
        swaps,
    })
}

pub fn harrigan_healy_embed(
    graph: &ProperLevelGraph,
    reference: &Drawing,
    choices: &HHChoices,
) -> Result<Drawing, EmbedError> {
    harrigan_healy(graph, reference, choices).map(|r| r.drawing)
}
