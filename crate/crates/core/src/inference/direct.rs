//! Orienting an undirected spanning tree away from the root.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::ParseGraph;
use crate::conll::DependencyTree;
use crate::error::{Error, Result};
use crate::graph::Adjacency;
use crate::graph::{EdgeId, UndirectedEdge};
use crate::mst::SpanningForest;

/// Parent of every vertex when the tree `edges` over `n_vertices` vertices
/// is hung from `root`; `None` for the root itself.
///
/// Once the root may only have outgoing edges and every other vertex
/// exactly one incoming edge, there is only one orientation: breadth-first
/// from the root, every edge points away from the vertex reached first.
pub fn orient_from_root(n_vertices: usize, edges: &[(usize, usize)], root: usize) -> Result<Vec<Option<usize>>> {
    if root >= n_vertices {
        return Err(Error::VertexIndex { vertex: root, n_vertices });
    }
    let mut as_edges = Vec::with_capacity(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        for x in [u, v] {
            if x >= n_vertices {
                return Err(Error::VertexIndex { vertex: x, n_vertices });
            }
        }
        as_edges.push(UndirectedEdge::new(u as u32, v as u32, 0.0, EdgeId(i as u32)));
    }
    let adj = Adjacency::new(n_vertices, &as_edges);
    let mut parent = vec![None; n_vertices];
    let mut reached = vec![false; n_vertices];
    reached[root] = true;
    let mut open = VecDeque::from([root]);
    while let Some(x) = open.pop_front() {
        for &i in adj.incident(x) {
            let y = as_edges[i as usize].other(x as u32) as usize;
            if !reached[y] {
                reached[y] = true;
                parent[y] = Some(x);
                open.push_back(y);
            }
        }
    }
    if let Some(v) = reached.iter().position(|r| !r) {
        return Err(Error::NotSpanning(v));
    }
    if edges.len() != n_vertices - 1 {
        return Err(Error::InvalidTree(alloc::format!(
            "{} edges cannot form a tree over {n_vertices} vertices",
            edges.len()
        )));
    }
    Ok(parent)
}

/// Turns a spanning tree of the parse graph into a dependency tree rooted
/// at vertex 0.
pub fn direct_tree(graph: &ParseGraph, tree: &SpanningForest) -> Result<DependencyTree> {
    let edges: Vec<(usize, usize)> = tree.edge_ids.iter().map(|&id| graph.endpoints(id)).collect();
    let parent = orient_from_root(graph.n_tokens + 1, &edges, 0)?;
    Ok(DependencyTree::new(parent[1..].iter().map(|p| p.expect("non-root vertex has a parent")).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices() {
        assert_eq!(orient_from_root(2, &[(1, 0)], 0).unwrap(), vec![None, Some(0)]);
    }

    // Root with one child that has two children, one of which continues
    // the chain: directing proceeds level by level.
    #[test]
    fn level_by_level() {
        let edges = [(2, 3), (1, 0), (4, 3), (1, 2), (1, 3)];
        let parent = orient_from_root(5, &edges, 0);
        // Five edges over five vertices contain a cycle.
        assert!(parent.is_err());
        let edges = [(2, 4), (1, 0), (1, 2), (3, 1)];
        let parent = orient_from_root(5, &edges, 0).unwrap();
        assert_eq!(parent, vec![None, Some(0), Some(1), Some(1), Some(2)]);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        assert_eq!(orient_from_root(3, &[(0, 1)], 0), Err(Error::NotSpanning(2)));
        assert!(orient_from_root(3, &[(0, 1), (1, 7)], 0).is_err());
    }
}
