//! F-heavy edge detection.
//!
//! An edge is F-heavy for a forest F when it is strictly heavier than every
//! edge on the F-path between its endpoints. Path maxima are answered
//! offline: an LCA pass in the style of Tarjan assigns each query to its
//! lowest common ancestor, and a union-find whose links remember the
//! heaviest edge towards the set root answers the query when that ancestor
//! is finished. With path compression alone the cost is O(m log n).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, EdgeId, UndirectedEdge, UndirectedGraph};
use crate::mst::SpanningForest;

/// Ids of the edges of `graph` that are F-heavy with respect to `forest`,
/// ascending. Edges whose endpoints lie in different trees of the forest
/// are F-light.
pub fn f_heavy_edges(graph: &UndirectedGraph, forest: &SpanningForest) -> Result<Vec<EdgeId>> {
    let mut by_id: Vec<(EdgeId, u32)> = graph.edges().iter().enumerate().map(|(i, e)| (e.id, i as u32)).collect();
    by_id.sort_unstable();
    let mut forest_edges = Vec::with_capacity(forest.len());
    for &id in &forest.edge_ids {
        let k = by_id.binary_search_by_key(&id, |&(id, _)| id).map_err(|_| Error::ForestEdgeNotInGraph(id))?;
        forest_edges.push(graph.edges()[by_id[k].1 as usize]);
    }
    let mask = heavy_edge_mask(graph, &forest_edges);
    let mut heavy: Vec<EdgeId> =
        graph.edges().iter().zip(mask).filter(|&(e, h)| h && !forest.contains(e.id)).map(|(e, _)| e.id).collect();
    heavy.sort_unstable();
    Ok(heavy)
}

/// `mask[i]` is true when edge `i` of `graph` is F-heavy. `forest` must be
/// an acyclic edge set over the vertices of `graph`.
pub(crate) fn heavy_edge_mask(graph: &UndirectedGraph, forest: &[UndirectedEdge]) -> Vec<bool> {
    let n = graph.n_vertices();
    let edges = graph.edges();
    let mut heavy = vec![false; edges.len()];
    if forest.is_empty() || edges.is_empty() {
        return heavy;
    }

    // Root every tree of the forest; `preorder` lists vertices so that each
    // parent precedes its children.
    const NONE: u32 = u32::MAX;
    let tree_adj = Adjacency::new(n, forest);
    let mut parent = vec![NONE; n];
    let mut up_weight = vec![f64::NEG_INFINITY; n];
    let mut tree_of = vec![NONE; n];
    let mut preorder = Vec::with_capacity(n);
    let mut stack = Vec::new();
    for root in 0..n {
        if tree_of[root] != NONE {
            continue;
        }
        tree_of[root] = root as u32;
        stack.push(root as u32);
        while let Some(x) = stack.pop() {
            preorder.push(x);
            for &fe in tree_adj.incident(x as usize) {
                let e = &forest[fe as usize];
                let y = e.other(x) as usize;
                if tree_of[y] == NONE {
                    tree_of[y] = root as u32;
                    parent[y] = x;
                    up_weight[y] = e.weight;
                    stack.push(y as u32);
                }
            }
        }
    }

    // Queries: graph edges inside a single tree, listed under both endpoints.
    let queries: Vec<u32> = (0..edges.len() as u32)
        .filter(|&i| {
            let e = &edges[i as usize];
            e.u != e.v && tree_of[e.u as usize] == tree_of[e.v as usize]
        })
        .collect();
    let query_graph: Vec<UndirectedEdge> = queries.iter().map(|&i| edges[i as usize]).collect();
    let query_adj = Adjacency::new(n, &query_graph);

    let mut sets = PathMaxSets::new(n);
    let mut done = vec![false; n];
    let mut bucket_head = vec![NONE; n];
    let mut bucket_next = vec![NONE; queries.len()];

    // Reverse preorder is a postorder of the same trees.
    for &x in preorder.iter().rev() {
        let x = x as usize;
        done[x] = true;
        for &q in query_adj.incident(x) {
            let y = query_graph[q as usize].other(x as u32) as usize;
            if done[y] && y != x {
                let lca = sets.find(y).0;
                bucket_next[q as usize] = bucket_head[lca];
                bucket_head[lca] = q;
            }
        }
        let mut q = bucket_head[x];
        while q != NONE {
            let e = &query_graph[q as usize];
            let path_max = sets.find(e.u as usize).1.max(sets.find(e.v as usize).1);
            if e.weight > path_max {
                heavy[queries[q as usize] as usize] = true;
            }
            q = bucket_next[q as usize];
        }
        if parent[x] != NONE {
            sets.link(x, parent[x] as usize, up_weight[x]);
        }
    }
    heavy
}

/// Union-find whose parent links carry the maximum edge weight between a
/// node and its parent in the set tree.
struct PathMaxSets {
    parent: Vec<u32>,
    up_max: Vec<f64>,
    path: Vec<u32>,
}

impl PathMaxSets {
    fn new(n: usize) -> Self {
        PathMaxSets { parent: (0..n as u32).collect(), up_max: vec![f64::NEG_INFINITY; n], path: Vec::new() }
    }

    /// Makes `root` (a set root) a child of `parent` through an edge of `weight`.
    fn link(&mut self, root: usize, parent: usize, weight: f64) {
        self.parent[root] = parent as u32;
        self.up_max[root] = weight;
    }

    /// Set root of `x` and the heaviest weight on the path from `x` to it.
    fn find(&mut self, x: usize) -> (usize, f64) {
        let mut cur = x;
        self.path.clear();
        while self.parent[cur] as usize != cur {
            self.path.push(cur as u32);
            cur = self.parent[cur] as usize;
        }
        let root = cur;
        // The last node on the path hangs directly off the root.
        for k in (0..self.path.len().saturating_sub(1)).rev() {
            let node = self.path[k] as usize;
            let above = self.path[k + 1] as usize;
            self.up_max[node] = self.up_max[node].max(self.up_max[above]);
            self.parent[node] = root as u32;
        }
        if x == root {
            (root, f64::NEG_INFINITY)
        } else {
            (root, self.up_max[x])
        }
    }
}
