//! Score tables and the undirected parse graph.

use alloc::vec;
use alloc::vec::Vec;

use super::{combine, Pruner};
use crate::conll::{DependencyTree, Sentence};
use crate::error::Result;
use crate::features::{FeatureMode, Model};
use crate::graph::{EdgeId, UndirectedGraph};

/// Directed arc scores `s(head, m)` for one sentence. Pruned arcs are absent.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedScoreTable {
    n_tokens: usize,
    // (n+1) x (n+1), row = head, column = modifier; -inf marks an absent arc.
    scores: Vec<f64>,
}

impl DirectedScoreTable {
    /// Table over `n_tokens` tokens with every arc absent.
    pub fn empty(n_tokens: usize) -> Self {
        DirectedScoreTable { n_tokens, scores: vec![f64::NEG_INFINITY; (n_tokens + 1) * (n_tokens + 1)] }
    }

    /// Fills every valid arc from `score`; `None` leaves the arc absent.
    pub fn from_fn(n_tokens: usize, mut score: impl FnMut(usize, usize) -> Option<f64>) -> Self {
        let mut table = DirectedScoreTable::empty(n_tokens);
        for h in 0..=n_tokens {
            for m in 1..=n_tokens {
                if h != m {
                    if let Some(s) = score(h, m) {
                        table.set(h, m, s);
                    }
                }
            }
        }
        table
    }

    pub fn n_tokens(&self) -> usize {
        self.n_tokens
    }

    /// Panics unless `m` is a token and `score` is finite.
    pub fn set(&mut self, head: usize, m: usize, score: f64) {
        assert!(m >= 1 && m <= self.n_tokens && head <= self.n_tokens && head != m);
        assert!(score.is_finite(), "arc scores must be finite");
        self.scores[head * (self.n_tokens + 1) + m] = score;
    }

    pub fn remove(&mut self, head: usize, m: usize) {
        self.scores[head * (self.n_tokens + 1) + m] = f64::NEG_INFINITY;
    }

    pub fn get(&self, head: usize, m: usize) -> Option<f64> {
        if head > self.n_tokens || m == 0 || m > self.n_tokens || head == m {
            return None;
        }
        let s = self.scores[head * (self.n_tokens + 1) + m];
        (s != f64::NEG_INFINITY).then_some(s)
    }

    /// Score with absent arcs as negative infinity.
    pub fn get_or_neg_inf(&self, head: usize, m: usize) -> f64 {
        self.get(head, m).unwrap_or(f64::NEG_INFINITY)
    }

    /// Sum of the tree's arc scores; negative infinity if it uses an absent arc.
    pub fn tree_score(&self, tree: &DependencyTree) -> f64 {
        tree.heads.iter().enumerate().map(|(k, &h)| self.get_or_neg_inf(h, k + 1)).sum()
    }
}

/// Arc scores of a directed model, restricted to the arcs the pruner keeps.
pub fn directed_score_table(sentence: &Sentence, model: &Model, pruner: Option<&Pruner>) -> Result<DirectedScoreTable> {
    model.expect_mode(FeatureMode::Directed)?;
    let n = sentence.len();
    let mut table = DirectedScoreTable::empty(n);
    for h in 0..=n {
        for m in 1..=n {
            if h == m || pruner.is_some_and(|p| !p.allows(sentence, h, m)) {
                continue;
            }
            table.set(h, m, model.arc_score(sentence, h, m)?);
        }
    }
    Ok(table)
}

/// Undirected graph over the root (vertex 0) and the tokens (1..=n). Edge
/// weights are negated scores, so its minimum spanning tree is the highest
/// scoring undirected tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseGraph {
    pub graph: UndirectedGraph,
    pub n_tokens: usize,
}

impl ParseGraph {
    /// Endpoints of edge `id` (ids are positions in the edge list).
    pub fn endpoints(&self, id: EdgeId) -> (usize, usize) {
        let e = &self.graph.edges()[id.0 as usize];
        (e.u as usize, e.v as usize)
    }
}

/// Builds the graph the undirected MST runs on.
///
/// Undirected models score each pair directly. Directed models score both
/// arcs and merge them with the model's combiner; a root pair has a single
/// arc, and when pruning leaves only one arc of a pair that arc's score is
/// used. Pairs are dropped only when both arcs are pruned, and pairs with
/// the root are always kept so the graph stays connected. The directed
/// score table is returned for directed models.
pub fn build_parse_graph(
    sentence: &Sentence,
    model: &Model,
    pruner: Option<&Pruner>,
) -> Result<(ParseGraph, Option<DirectedScoreTable>)> {
    let n = sentence.len();
    let mut graph = UndirectedGraph::with_capacity(n + 1, n + n * n.saturating_sub(1) / 2);
    let table = match model.mode {
        FeatureMode::Directed => Some(directed_score_table(sentence, model, pruner)?),
        FeatureMode::Undirected => None,
    };
    for u in 0..=n {
        for v in (u + 1)..=n {
            let score = match &table {
                Some(t) => match (t.get(u, v), t.get(v, u)) {
                    (Some(a), Some(b)) => Some(combine(a, b, model.combiner)),
                    (Some(a), None) | (None, Some(a)) => Some(a),
                    (None, None) => None,
                },
                None => {
                    if pruner.is_some_and(|p| !p.keeps_pair(sentence, u, v)) {
                        None
                    } else {
                        Some(model.pair_score(sentence, u, v)?)
                    }
                }
            };
            if let Some(s) = score {
                graph.add_edge(u as u32, v as u32, -s);
            }
        }
    }
    Ok((ParseGraph { graph, n_tokens: n }, table))
}
