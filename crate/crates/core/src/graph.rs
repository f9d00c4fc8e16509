//! Weighted undirected multigraphs, contraction and the Boruvka step.
//!
//! Every comparison between edges uses one global order: weight first, then
//! the smaller [`EdgeId`]. With that order the minimum spanning forest of any
//! graph is unique, which lets the different MSF algorithms be compared by
//! edge-set equality.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// Identifier of an edge in the outermost input graph. Contraction keeps it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UndirectedEdge {
    pub u: u32,
    pub v: u32,
    pub weight: f64,
    pub id: EdgeId,
}

impl UndirectedEdge {
    pub fn new(u: u32, v: u32, weight: f64, id: EdgeId) -> Self {
        UndirectedEdge { u, v, weight, id }
    }

    pub fn is_self_edge(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: u32) -> u32 {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Total order used by every MST routine: weight, then edge id.
    pub fn order(&self, other: &Self) -> Ordering {
        self.weight.total_cmp(&other.weight).then(self.id.cmp(&other.id))
    }

    pub fn lighter_than(&self, other: &Self) -> bool {
        self.order(other) == Ordering::Less
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct UndirectedGraph {
    n_vertices: usize,
    edges: Vec<UndirectedEdge>,
}

impl UndirectedGraph {
    pub fn new(n_vertices: usize) -> Self {
        UndirectedGraph { n_vertices, edges: Vec::new() }
    }

    pub fn with_capacity(n_vertices: usize, n_edges: usize) -> Self {
        UndirectedGraph { n_vertices, edges: Vec::with_capacity(n_edges) }
    }

    /// Builds a graph from explicit edges, checking every endpoint.
    pub fn from_edges(n_vertices: usize, edges: Vec<UndirectedEdge>) -> Result<Self> {
        for e in &edges {
            for x in [e.u, e.v] {
                if x as usize >= n_vertices {
                    return Err(Error::VertexIndex { vertex: x as usize, n_vertices });
                }
            }
        }
        Ok(UndirectedGraph { n_vertices, edges })
    }

    pub(crate) fn from_edges_unchecked(n_vertices: usize, edges: Vec<UndirectedEdge>) -> Self {
        UndirectedGraph { n_vertices, edges }
    }

    /// Appends an edge whose id is its position in the edge list.
    ///
    /// Panics if an endpoint is out of range.
    pub fn add_edge(&mut self, u: u32, v: u32, weight: f64) -> EdgeId {
        assert!(
            (u as usize) < self.n_vertices && (v as usize) < self.n_vertices,
            "edge ({u}, {v}) out of range for {} vertices",
            self.n_vertices
        );
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(UndirectedEdge::new(u, v, weight, id));
        id
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[UndirectedEdge] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<UndirectedEdge> {
        self.edges
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::new(self.n_vertices, &self.edges)
    }
}

/// Per-vertex incident edge indices in compressed form. A self edge is
/// listed once, every other edge once under each endpoint.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<u32>,
    incident: Vec<u32>,
}

impl Adjacency {
    pub fn new(n_vertices: usize, edges: &[UndirectedEdge]) -> Self {
        let mut offsets = vec![0u32; n_vertices + 1];
        for e in edges {
            offsets[e.u as usize + 1] += 1;
            if e.v != e.u {
                offsets[e.v as usize + 1] += 1;
            }
        }
        for i in 0..n_vertices {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut incident = vec![0u32; offsets[n_vertices] as usize];
        for (i, e) in edges.iter().enumerate() {
            incident[cursor[e.u as usize] as usize] = i as u32;
            cursor[e.u as usize] += 1;
            if e.v != e.u {
                incident[cursor[e.v as usize] as usize] = i as u32;
                cursor[e.v as usize] += 1;
            }
        }
        Adjacency { offsets, incident }
    }

    pub fn incident(&self, v: usize) -> &[u32] {
        &self.incident[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn degree(&self, v: usize) -> usize {
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }
}

/// Maps every vertex to a dense component index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub component_of: Vec<u32>,
    pub n_components: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionResult {
    /// Graph over super-vertices.
    pub graph: UndirectedGraph,
    /// Old vertex to super-vertex.
    pub vertex_map: ComponentLabeling,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoruvkaStep {
    pub contraction: ContractionResult,
    /// Ids of the edges picked as some vertex's lightest edge, ascending.
    pub selected: Vec<EdgeId>,
}

fn subset_mask(graph: &UndirectedGraph, edge_subset: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; graph.n_edges()];
    for &i in edge_subset {
        if i >= graph.n_edges() {
            return Err(Error::EdgeIndex { index: i, n_edges: graph.n_edges() });
        }
        mask[i] = true;
    }
    Ok(mask)
}

/// Components of the subgraph made of the vertices of `graph` and the edges
/// listed in `edge_subset`. Labels are assigned in order of each
/// component's smallest vertex.
pub fn connected_components(graph: &UndirectedGraph, edge_subset: &[usize]) -> Result<ComponentLabeling> {
    let mask = subset_mask(graph, edge_subset)?;
    Ok(label_components(graph.n_vertices(), graph.edges(), &mask))
}

pub(crate) fn label_components(n_vertices: usize, edges: &[UndirectedEdge], mask: &[bool]) -> ComponentLabeling {
    let mut uf = UnionFind::new(n_vertices);
    for (e, &selected) in edges.iter().zip(mask) {
        if selected {
            uf.union(e.u as usize, e.v as usize);
        }
    }
    let mut label_of_root = vec![u32::MAX; n_vertices];
    let mut component_of = vec![0u32; n_vertices];
    let mut n_components = 0usize;
    for (v, label) in component_of.iter_mut().enumerate() {
        let r = uf.find(v);
        if label_of_root[r] == u32::MAX {
            label_of_root[r] = n_components as u32;
            n_components += 1;
        }
        *label = label_of_root[r];
    }
    ComponentLabeling { component_of, n_components }
}

/// Replaces every component of `edge_subset` by a super-vertex and keeps
/// one edge per edge outside the subset. Self edges and repetitive edges
/// are kept; see [`simplify`].
pub fn contract_graph(graph: &UndirectedGraph, edge_subset: &[usize]) -> Result<ContractionResult> {
    let mask = subset_mask(graph, edge_subset)?;
    let vertex_map = label_components(graph.n_vertices(), graph.edges(), &mask);
    let (graph, _) = contract_with(graph, &vertex_map, &mask);
    Ok(ContractionResult { graph, vertex_map })
}

/// Contraction that also reports, for each new edge, the index of the edge
/// it came from.
pub(crate) fn contract_with(
    graph: &UndirectedGraph,
    labeling: &ComponentLabeling,
    removed: &[bool],
) -> (UndirectedGraph, Vec<u32>) {
    let map = &labeling.component_of;
    let mut edges = Vec::with_capacity(graph.n_edges());
    let mut source = Vec::with_capacity(graph.n_edges());
    for (i, e) in graph.edges().iter().enumerate() {
        if removed[i] {
            continue;
        }
        edges.push(UndirectedEdge::new(map[e.u as usize], map[e.v as usize], e.weight, e.id));
        source.push(i as u32);
    }
    (UndirectedGraph::from_edges_unchecked(labeling.n_components, edges), source)
}

/// Drops self edges and keeps only the lightest edge between each pair of
/// vertices. The surviving edges come out sorted by endpoint pair.
pub fn simplify(graph: &UndirectedGraph) -> UndirectedGraph {
    let source: Vec<u32> = (0..graph.n_edges() as u32).collect();
    simplify_tracked(graph, &source).0
}

/// [`simplify`] that carries a per-edge payload through.
///
/// Runs in O(n + m) with two counting-sort passes over the endpoint pairs.
pub(crate) fn simplify_tracked(graph: &UndirectedGraph, source: &[u32]) -> (UndirectedGraph, Vec<u32>) {
    let n = graph.n_vertices();
    let edges = graph.edges();
    let lo = |e: &UndirectedEdge| e.u.min(e.v) as usize;
    let hi = |e: &UndirectedEdge| e.u.max(e.v) as usize;

    let live: Vec<u32> = (0..edges.len() as u32).filter(|&i| !edges[i as usize].is_self_edge()).collect();
    let by_hi = counting_sort(&live, n, |i| hi(&edges[i as usize]));
    let sorted = counting_sort(&by_hi, n, |i| lo(&edges[i as usize]));

    let mut out = Vec::new();
    let mut out_source = Vec::new();
    let mut k = 0;
    while k < sorted.len() {
        let first = &edges[sorted[k] as usize];
        let key = (lo(first), hi(first));
        let mut best = sorted[k];
        k += 1;
        while k < sorted.len() {
            let e = &edges[sorted[k] as usize];
            if (lo(e), hi(e)) != key {
                break;
            }
            if e.lighter_than(&edges[best as usize]) {
                best = sorted[k];
            }
            k += 1;
        }
        out.push(edges[best as usize]);
        out_source.push(source[best as usize]);
    }
    (UndirectedGraph::from_edges_unchecked(n, out), out_source)
}

fn counting_sort(items: &[u32], n_keys: usize, key: impl Fn(u32) -> usize) -> Vec<u32> {
    let mut start = vec![0usize; n_keys + 1];
    for &i in items {
        start[key(i) + 1] += 1;
    }
    for k in 0..n_keys {
        start[k + 1] += start[k];
    }
    let mut out = vec![0u32; items.len()];
    for &i in items {
        let k = key(i);
        out[start[k]] = i;
        start[k] += 1;
    }
    out
}

/// Index of the lightest incident edge of every vertex that has one, sorted
/// and deduplicated. Self edges are ignored.
pub(crate) fn lightest_incident_edges(graph: &UndirectedGraph) -> Vec<u32> {
    const NONE: u32 = u32::MAX;
    let edges = graph.edges();
    let mut min_edge = vec![NONE; graph.n_vertices()];
    for (i, e) in edges.iter().enumerate() {
        if e.is_self_edge() {
            continue;
        }
        for x in [e.u as usize, e.v as usize] {
            let cur = min_edge[x];
            if cur == NONE || e.lighter_than(&edges[cur as usize]) {
                min_edge[x] = i as u32;
            }
        }
    }
    let mut selected: Vec<u32> = min_edge.into_iter().filter(|&i| i != NONE).collect();
    selected.sort_unstable();
    selected.dedup();
    selected
}

pub(crate) struct TrackedStep {
    pub graph: UndirectedGraph,
    /// For each edge of `graph`, its index in the input graph.
    pub source: Vec<u32>,
    /// Indices (into the input graph) of the selected edges.
    pub selected: Vec<u32>,
    pub vertex_map: ComponentLabeling,
}

pub(crate) fn boruvka_step_tracked(graph: &UndirectedGraph) -> TrackedStep {
    let selected = lightest_incident_edges(graph);
    let mut mask = vec![false; graph.n_edges()];
    for &i in &selected {
        mask[i as usize] = true;
    }
    let vertex_map = label_components(graph.n_vertices(), graph.edges(), &mask);
    let (contracted, source) = contract_with(graph, &vertex_map, &mask);
    let (simple, source) = simplify_tracked(&contracted, &source);
    TrackedStep { graph: simple, source, selected, vertex_map }
}

/// One Boruvka step: pick every vertex's lightest edge, contract the picked
/// edges and simplify the result.
pub fn boruvka_step(graph: &UndirectedGraph) -> BoruvkaStep {
    let step = boruvka_step_tracked(graph);
    let mut selected: Vec<EdgeId> = step.selected.iter().map(|&i| graph.edges()[i as usize].id).collect();
    selected.sort_unstable();
    BoruvkaStep { contraction: ContractionResult { graph: step.graph, vertex_map: step.vertex_map }, selected }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(u32, u32, f64)]) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w);
        }
        g
    }

    #[test]
    fn components_of_empty_subset_are_singletons() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let c = connected_components(&g, &[]).unwrap();
        assert_eq!(c.n_components, 3);
        assert_eq!(c.component_of, vec![0, 1, 2]);
    }

    #[test]
    fn components_of_single_edge() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let c = connected_components(&g, &[0]).unwrap();
        assert_eq!(c.n_components, 2);
        assert_eq!(c.component_of, vec![0, 0, 1]);
    }

    #[test]
    fn invalid_edge_index_is_rejected() {
        let g = graph(2, &[(0, 1, 1.0)]);
        assert_eq!(connected_components(&g, &[3]), Err(Error::EdgeIndex { index: 3, n_edges: 1 }));
        assert!(contract_graph(&g, &[1]).is_err());
    }

    #[test]
    fn out_of_range_endpoint_is_rejected() {
        let e = UndirectedEdge::new(0, 5, 1.0, EdgeId(0));
        assert!(UndirectedGraph::from_edges(3, vec![e]).is_err());
    }

    #[test]
    fn full_contraction_leaves_self_edges() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)]);
        let c = contract_graph(&g, &[0, 1, 2]).unwrap();
        assert_eq!(c.graph.n_vertices(), 1);
        assert_eq!(c.graph.n_edges(), 0);

        let c = contract_graph(&g, &[0, 1]).unwrap();
        assert_eq!(c.graph.n_vertices(), 1);
        assert_eq!(c.graph.n_edges(), 1);
        assert!(c.graph.edges()[0].is_self_edge());
        assert_eq!(c.graph.edges()[0].id, EdgeId(2));
    }

    // The square a-b-c-d with both diagonals: contracting the lightest edges
    // {a-b, c-d} leaves two super-vertices joined by four repetitive edges.
    #[test]
    fn contraction_keeps_repetitive_edges_until_simplified() {
        let g = graph(4, &[(0, 1, 1.0), (1, 2, 5.0), (2, 3, 2.0), (3, 0, 6.0), (0, 2, 4.0), (1, 3, 7.0)]);
        let c = contract_graph(&g, &[0, 2]).unwrap();
        assert_eq!(c.graph.n_vertices(), 2);
        assert_eq!(c.graph.n_edges(), 4);
        let s = simplify(&c.graph);
        assert_eq!(s.n_edges(), 1);
        assert_eq!(s.edges()[0].id, EdgeId(4));
    }

    #[test]
    fn simplify_drops_self_edges_and_heavier_parallels() {
        let mut g = graph(2, &[(0, 0, 5.0), (0, 1, 7.0), (1, 0, 3.0)]);
        let s = simplify(&g);
        assert_eq!(s.n_edges(), 1);
        assert_eq!(s.edges()[0].weight, 3.0);

        // Equal weights keep the smaller id.
        g.add_edge(0, 1, 3.0);
        let s = simplify(&g);
        assert_eq!(s.edges()[0].id, EdgeId(2));
    }

    #[test]
    fn boruvka_step_on_single_edge() {
        let g = graph(2, &[(0, 1, 2.0)]);
        let step = boruvka_step(&g);
        assert_eq!(step.selected, vec![EdgeId(0)]);
        assert_eq!(step.contraction.graph.n_vertices(), 1);
        assert_eq!(step.contraction.graph.n_edges(), 0);
    }

    #[test]
    fn boruvka_step_on_path_selects_forced_minima() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 2.0)]);
        let step = boruvka_step(&g);
        assert_eq!(step.selected, vec![EdgeId(0), EdgeId(1)]);
        assert_eq!(step.contraction.graph.n_vertices(), 1);
    }

    #[test]
    fn adjacency_lists_both_endpoints() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 2.0), (2, 2, 0.5)]);
        let adj = g.adjacency();
        assert_eq!(adj.incident(0), &[0]);
        assert_eq!(adj.incident(1), &[0, 1]);
        assert_eq!(adj.incident(2), &[1, 2]);
        assert_eq!(adj.degree(1), 2);
    }
}
