//! Drawings (one vertex order per level) and crossing semantics.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{ProperLevelGraph, VertexIx};

/// A left-to-right vertex order for every nonempty level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Drawing {
    orders: BTreeMap<u32, Vec<String>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("drawing lists unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {id} is on level {actual}, drawing places it on level {placed}")]
    WrongLevel {
        id: String,
        actual: u32,
        placed: u32,
    },
    #[error("vertex {0} appears twice in the drawing")]
    Duplicate(String),
    #[error("vertex {0} is missing from the drawing")]
    Missing(String),
}

impl Drawing {
    pub fn new(orders: BTreeMap<u32, Vec<String>>) -> Self {
        Drawing { orders }
    }

    pub fn from_slices(levels: &[(u32, &[&str])]) -> Self {
        Drawing {
            orders: levels
                .iter()
                .map(|(l, ids)| (*l, ids.iter().map(|s| s.to_string()).collect()))
                .collect(),
        }
    }

    /// Every level ordered by vertex id.
    pub fn canonical(graph: &ProperLevelGraph) -> Self {
        Self::from_positions(graph, &canonical_positions(graph))
    }

    /// Builds a drawing from a position per vertex index.
    pub fn from_positions(graph: &ProperLevelGraph, pos: &[usize]) -> Self {
        let mut orders = BTreeMap::new();
        for (level, range) in graph.level_ranges() {
            let mut vs: Vec<VertexIx> = range.collect();
            vs.sort_by_key(|&v| pos[v]);
            orders.insert(
                level,
                vs.into_iter().map(|v| graph.id(v).to_string()).collect(),
            );
        }
        Drawing { orders }
    }

    pub fn orders(&self) -> &BTreeMap<u32, Vec<String>> {
        &self.orders
    }

    pub fn order(&self, level: u32) -> Option<&[String]> {
        self.orders.get(&level).map(Vec::as_slice)
    }

    /// Reverses every level order.
    pub fn mirrored(&self) -> Self {
        Drawing {
            orders: self
                .orders
                .iter()
                .map(|(l, o)| (*l, o.iter().rev().cloned().collect()))
                .collect(),
        }
    }

    /// Position of each vertex within its level, indexed by [`VertexIx`].
    pub fn positions(&self, graph: &ProperLevelGraph) -> Result<Vec<usize>, DrawingError> {
        let mut pos = vec![usize::MAX; graph.vertex_count()];
        for (&level, order) in &self.orders {
            for (p, id) in order.iter().enumerate() {
                let v = graph
                    .lookup(id)
                    .ok_or_else(|| DrawingError::UnknownVertex(id.clone()))?;
                if graph.level(v) != level {
                    return Err(DrawingError::WrongLevel {
                        id: id.clone(),
                        actual: graph.level(v),
                        placed: level,
                    });
                }
                if pos[v] != usize::MAX {
                    return Err(DrawingError::Duplicate(id.clone()));
                }
                pos[v] = p;
            }
        }
        if let Some(v) = pos.iter().position(|&p| p == usize::MAX) {
            return Err(DrawingError::Missing(graph.id(v).to_string()));
        }
        Ok(pos)
    }
}

/// Positions of the id-sorted drawing.
pub fn canonical_positions(graph: &ProperLevelGraph) -> Vec<usize> {
    let mut pos = vec![0; graph.vertex_count()];
    for (_, range) in graph.level_ranges() {
        let start = range.start;
        for v in range {
            pos[v] = v - start;
        }
    }
    pos
}

/// Whether two edges between the same pair of levels cross. Edges sharing an
/// endpoint never cross.
#[inline]
pub fn edges_cross(pos: &[usize], e: (VertexIx, VertexIx), f: (VertexIx, VertexIx)) -> bool {
    e.0 != f.0 && e.1 != f.1 && ((pos[e.0] < pos[f.0]) != (pos[e.1] < pos[f.1]))
}

/// All crossing edge pairs, as indices into `graph.edges()`.
pub fn crossing_pairs_at(graph: &ProperLevelGraph, pos: &[usize]) -> Vec<(usize, usize)> {
    let edges = graph.edges();
    graph
        .independent_edge_pairs()
        .into_iter()
        .filter(|&(i, j)| edges_cross(pos, edges[i], edges[j]))
        .collect()
}

pub fn crossing_pairs(
    graph: &ProperLevelGraph,
    drawing: &Drawing,
) -> Result<Vec<(usize, usize)>, DrawingError> {
    Ok(crossing_pairs_at(graph, &drawing.positions(graph)?))
}

pub fn count_crossings_at(graph: &ProperLevelGraph, pos: &[usize]) -> usize {
    let edges = graph.edges();
    let mut n = 0;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if graph.level(e.0) == graph.level(f.0) && edges_cross(pos, e, f) {
                n += 1;
            }
        }
    }
    n
}

pub fn count_crossings(graph: &ProperLevelGraph, drawing: &Drawing) -> Result<usize, DrawingError> {
    Ok(count_crossings_at(graph, &drawing.positions(graph)?))
}

pub fn is_planar_drawing(
    graph: &ProperLevelGraph,
    drawing: &Drawing,
) -> Result<bool, DrawingError> {
    count_crossings(graph, drawing).map(|c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LevelGraph;

    fn k22() -> ProperLevelGraph {
        ProperLevelGraph::new(&LevelGraph::from_slices(
            &[("u1", 1), ("u2", 1), ("v1", 2), ("v2", 2)],
            &[("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2")],
        ))
        .unwrap()
    }

    #[test]
    fn shared_endpoint_never_crosses() {
        let g = ProperLevelGraph::new(&LevelGraph::from_slices(
            &[("u", 1), ("a", 2), ("b", 2)],
            &[("u", "a"), ("u", "b")],
        ))
        .unwrap();
        for d in [
            Drawing::from_slices(&[(1, &["u"]), (2, &["a", "b"])]),
            Drawing::from_slices(&[(1, &["u"]), (2, &["b", "a"])]),
        ] {
            assert_eq!(count_crossings(&g, &d).unwrap(), 0);
        }
    }

    #[test]
    fn k22_has_one_crossing() {
        let d = Drawing::from_slices(&[(1, &["u1", "u2"]), (2, &["v1", "v2"])]);
        assert_eq!(count_crossings(&k22(), &d).unwrap(), 1);
        assert!(!is_planar_drawing(&k22(), &d).unwrap());
    }

    #[test]
    fn reversed_matching_has_three_crossings() {
        let g = ProperLevelGraph::new(&LevelGraph::from_slices(
            &[
                ("u1", 1),
                ("u2", 1),
                ("u3", 1),
                ("v1", 2),
                ("v2", 2),
                ("v3", 2),
            ],
            &[("u1", "v1"), ("u2", "v2"), ("u3", "v3")],
        ))
        .unwrap();
        let d = Drawing::from_slices(&[(1, &["u1", "u2", "u3"]), (2, &["v3", "v2", "v1"])]);
        assert_eq!(count_crossings(&g, &d).unwrap(), 3);
    }

    #[test]
    fn path_is_planar() {
        let g = ProperLevelGraph::new(&LevelGraph::from_slices(
            &[("a", 1), ("b", 2), ("c", 3), ("d", 4)],
            &[("a", "b"), ("b", "c"), ("c", "d")],
        ))
        .unwrap();
        assert!(is_planar_drawing(&g, &Drawing::canonical(&g)).unwrap());
    }

    #[test]
    fn mismatches_are_rejected() {
        let g = k22();
        let missing = Drawing::from_slices(&[(1, &["u1"]), (2, &["v1", "v2"])]);
        assert_eq!(
            count_crossings(&g, &missing),
            Err(DrawingError::Missing("u2".into()))
        );
        let wrong = Drawing::from_slices(&[(1, &["u1", "v1"]), (2, &["u2", "v2"])]);
        assert!(matches!(
            count_crossings(&g, &wrong),
            Err(DrawingError::WrongLevel { .. })
        ));
        let dup = Drawing::from_slices(&[(1, &["u1", "u1", "u2"]), (2, &["v1", "v2"])]);
        assert_eq!(
            count_crossings(&g, &dup),
            Err(DrawingError::Duplicate("u1".into()))
        );
        let unknown = Drawing::from_slices(&[(1, &["u1", "u2", "q"]), (2, &["v1", "v2"])]);
        assert_eq!(
            count_crossings(&g, &unknown),
            Err(DrawingError::UnknownVertex("q".into()))
        );
    }

    #[test]
    fn mirroring_preserves_count() {
        let d = Drawing::from_slices(&[(1, &["u1", "u2"]), (2, &["v1", "v2"])]);
        assert_eq!(count_crossings(&k22(), &d.mirrored()).unwrap(), 1);
    }
}
