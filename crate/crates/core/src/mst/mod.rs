//! Minimum spanning forest algorithms.
//!
//! All of them minimize; callers that want a maximum spanning tree negate
//! their weights first. Results are reported as [`SpanningForest`]s over the
//! ids of the input graph's edges, and because ties are broken by edge id
//! the forest of a given graph is unique.

mod heavy;
mod random;
mod randomized;

use alloc::vec::Vec;

use crate::graph::{boruvka_step_tracked, EdgeId, UndirectedEdge, UndirectedGraph};
use crate::union_find::UnionFind;

pub use heavy::f_heavy_edges;
pub(crate) use heavy::heavy_edge_mask;
pub use random::RandomSource;
pub use randomized::{randomized_msf, randomized_msf_with, RandomizedOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct SpanningForest {
    /// Member edge ids, ascending.
    pub edge_ids: Vec<EdgeId>,
    pub total_weight: f64,
}

impl SpanningForest {
    /// Forest made of the given input-graph edges. The weight is summed in
    /// id order so equal edge sets always produce bit-identical totals.
    pub fn from_edges<'a>(edges: impl IntoIterator<Item = &'a UndirectedEdge>) -> Self {
        let mut members: Vec<(EdgeId, f64)> = edges.into_iter().map(|e| (e.id, e.weight)).collect();
        members.sort_unstable_by_key(|&(id, _)| id);
        members.dedup_by_key(|&mut (id, _)| id);
        let total_weight = members.iter().map(|&(_, w)| w).sum();
        SpanningForest { edge_ids: members.into_iter().map(|(id, _)| id).collect(), total_weight }
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.edge_ids.binary_search(&id).is_ok()
    }
}

/// Kruskal's algorithm over the global (weight, id) order.
pub fn kruskal_msf(graph: &UndirectedGraph) -> SpanningForest {
    let picked = kruskal_indices(graph);
    SpanningForest::from_edges(picked.iter().map(|&i| &graph.edges()[i as usize]))
}

pub(crate) fn kruskal_indices(graph: &UndirectedGraph) -> Vec<u32> {
    let edges = graph.edges();
    let mut order: Vec<u32> = (0..edges.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| edges[a as usize].order(&edges[b as usize]));
    let mut uf = UnionFind::new(graph.n_vertices());
    let mut picked = Vec::with_capacity(graph.n_vertices().saturating_sub(1));
    for i in order {
        let e = &edges[i as usize];
        if uf.union(e.u as usize, e.v as usize) {
            picked.push(i);
        }
    }
    picked
}

/// Repeated Boruvka steps until no edges remain; the forest is the union of
/// the edges selected by each step.
pub fn boruvka_msf(graph: &UndirectedGraph) -> SpanningForest {
    let mut selected: Vec<UndirectedEdge> = Vec::new();
    let mut current = crate::graph::simplify(graph);
    while current.n_edges() > 0 {
        let step = boruvka_step_tracked(&current);
        selected.extend(step.selected.iter().map(|&i| current.edges()[i as usize]));
        current = step.graph;
    }
    SpanningForest::from_edges(&selected)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> UndirectedGraph {
        let mut g = UndirectedGraph::new(3);
        g.add_edge(0, 1, 1.0);
        g.add_edge(1, 2, 2.0);
        g.add_edge(0, 2, 3.0);
        g
    }

    #[test]
    fn kruskal_on_triangle() {
        let f = kruskal_msf(&triangle());
        assert_eq!(f.edge_ids, vec![EdgeId(0), EdgeId(1)]);
        assert_eq!(f.total_weight, 3.0);
    }

    #[test]
    fn empty_and_single_vertex_graphs() {
        assert!(kruskal_msf(&UndirectedGraph::new(0)).is_empty());
        assert!(boruvka_msf(&UndirectedGraph::new(1)).is_empty());
        assert_eq!(kruskal_msf(&UndirectedGraph::new(4)).total_weight, 0.0);
    }

    #[test]
    fn boruvka_matches_kruskal_on_triangle() {
        assert_eq!(boruvka_msf(&triangle()), kruskal_msf(&triangle()));
    }

    #[test]
    fn disconnected_graph_gets_a_forest() {
        let mut g = UndirectedGraph::new(5);
        g.add_edge(0, 1, 4.0);
        g.add_edge(1, 2, 1.0);
        g.add_edge(0, 2, 2.0);
        g.add_edge(3, 4, 9.0);
        let f = boruvka_msf(&g);
        assert_eq!(f.len(), 3);
        assert_eq!(f, kruskal_msf(&g));
    }

    #[test]
    fn ties_are_broken_by_id() {
        let mut g = UndirectedGraph::new(3);
        g.add_edge(0, 1, 1.0);
        g.add_edge(1, 2, 1.0);
        g.add_edge(0, 2, 1.0);
        let expected = vec![EdgeId(0), EdgeId(1)];
        assert_eq!(kruskal_msf(&g).edge_ids, expected);
        assert_eq!(boruvka_msf(&g).edge_ids, expected);
    }
}
