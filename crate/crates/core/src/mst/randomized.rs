//! Randomized expected-linear-time minimum spanning forest.
//!
//! Each call performs two Boruvka steps, samples every remaining edge with
//! a fair coin, recurses on the sample to get a forest F, discards the
//! F-heavy edges of the contracted graph and recurses on what is left. The
//! result is the union of the Boruvka selections and the second recursive
//! forest.
//!
//! Internally every level works with edge indices into its own input so
//! that forests found in a subgraph can be mapped back to the caller's
//! vertex numbering in linear time.

use alloc::vec;
use alloc::vec::Vec;

use super::{heavy_edge_mask, kruskal_indices, RandomSource, SpanningForest};
use crate::graph::{boruvka_step_tracked, UndirectedEdge, UndirectedGraph};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RandomizedOptions {
    /// Hand graphs with at most this many edges to Kruskal. Off by default;
    /// only meant for benchmarking.
    pub kruskal_cutoff: Option<usize>,
}

/// Exact minimum spanning forest; the coin flips only affect running time.
pub fn randomized_msf(graph: &UndirectedGraph, rng: &mut RandomSource) -> SpanningForest {
    randomized_msf_with(graph, rng, RandomizedOptions::default())
}

pub fn randomized_msf_with(
    graph: &UndirectedGraph,
    rng: &mut RandomSource,
    options: RandomizedOptions,
) -> SpanningForest {
    let picked = msf_indices(graph, rng, &options);
    SpanningForest::from_edges(picked.iter().map(|&i| &graph.edges()[i as usize]))
}

fn msf_indices(graph: &UndirectedGraph, rng: &mut RandomSource, options: &RandomizedOptions) -> Vec<u32> {
    if graph.n_edges() == 0 {
        return Vec::new();
    }
    if let Some(cutoff) = options.kruskal_cutoff {
        if graph.n_edges() <= cutoff {
            return kruskal_indices(graph);
        }
    }

    let first = boruvka_step_tracked(graph);
    let second = boruvka_step_tracked(&first.graph);
    let mut picked = first.selected;
    picked.extend(second.selected.iter().map(|&i| first.source[i as usize]));
    let contracted = second.graph;
    let contracted_source: Vec<u32> = second.source.iter().map(|&i| first.source[i as usize]).collect();
    if contracted.n_edges() == 0 {
        return picked;
    }

    let sampled: Vec<bool> = (0..contracted.n_edges()).map(|_| rng.coin_flip()).collect();
    let (sample, sample_source) = edge_induced(&contracted, &sampled);
    let forest: Vec<UndirectedEdge> = msf_indices(&sample, rng, options)
        .into_iter()
        .map(|k| contracted.edges()[sample_source[k as usize] as usize])
        .collect();

    let light: Vec<bool> = heavy_edge_mask(&contracted, &forest).into_iter().map(|heavy| !heavy).collect();
    let (remaining, remaining_source) = edge_induced(&contracted, &light);
    picked.extend(
        msf_indices(&remaining, rng, options)
            .into_iter()
            .map(|k| contracted_source[remaining_source[k as usize] as usize]),
    );
    picked
}

/// Subgraph made of the kept edges and the vertices they touch, with
/// vertices renumbered densely. Also returns each new edge's index in
/// `graph`.
fn edge_induced(graph: &UndirectedGraph, keep: &[bool]) -> (UndirectedGraph, Vec<u32>) {
    const NONE: u32 = u32::MAX;
    let mut new_id = vec![NONE; graph.n_vertices()];
    for (e, _) in graph.edges().iter().zip(keep).filter(|&(_, &k)| k) {
        new_id[e.u as usize] = 0;
        new_id[e.v as usize] = 0;
    }
    let mut n = 0u32;
    for id in new_id.iter_mut().filter(|id| **id != NONE) {
        *id = n;
        n += 1;
    }
    let mut edges = Vec::new();
    let mut source = Vec::new();
    for (i, e) in graph.edges().iter().enumerate() {
        if keep[i] {
            edges.push(UndirectedEdge::new(new_id[e.u as usize], new_id[e.v as usize], e.weight, e.id));
            source.push(i as u32);
        }
    }
    (UndirectedGraph::from_edges_unchecked(n as usize, edges), source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mst::kruskal_msf;

    #[test]
    fn empty_graph_gives_empty_forest() {
        let mut rng = RandomSource::new(0);
        assert!(randomized_msf(&UndirectedGraph::new(0), &mut rng).is_empty());
        assert!(randomized_msf(&UndirectedGraph::new(5), &mut rng).is_empty());
    }

    #[test]
    fn triangle_for_any_seed() {
        let mut g = UndirectedGraph::new(3);
        g.add_edge(0, 1, 1.0);
        g.add_edge(1, 2, 2.0);
        g.add_edge(0, 2, 3.0);
        for seed in 0..20 {
            let mut rng = RandomSource::new(seed);
            assert_eq!(randomized_msf(&g, &mut rng), kruskal_msf(&g));
        }
    }

    #[test]
    fn self_edges_and_parallel_edges() {
        let mut g = UndirectedGraph::new(3);
        g.add_edge(0, 0, -5.0);
        g.add_edge(0, 1, 4.0);
        g.add_edge(1, 0, 2.0);
        g.add_edge(1, 2, 3.0);
        let mut rng = RandomSource::new(3);
        let f = randomized_msf(&g, &mut rng);
        assert_eq!(f, kruskal_msf(&g));
        assert_eq!(f.total_weight, 5.0);
    }

    #[test]
    fn cutoff_does_not_change_the_answer() {
        let mut g = UndirectedGraph::new(30);
        let mut r = RandomSource::new(11);
        for u in 0..30u32 {
            for v in (u + 1)..30 {
                if r.unit() < 0.3 {
                    g.add_edge(u, v, r.unit());
                }
            }
        }
        let expected = kruskal_msf(&g);
        let options = RandomizedOptions { kruskal_cutoff: Some(16) };
        assert_eq!(randomized_msf_with(&g, &mut RandomSource::new(1), options), expected);
        assert_eq!(randomized_msf(&g, &mut RandomSource::new(1)), expected);
    }
}
