//! Local enhancement of a directed tree under a directed model.
//!
//! For a path `t -> u -> v` the swap replaces `(u, v)` by `(v, u)` and
//! `(t, u)` by `(t, v)`, moving `v` into `u`'s place. The swap keeps a
//! valid tree: `u` and its other children end up below `v`, and `v`'s
//! children stay where they are.

use super::DirectedScoreTable;
use crate::conll::DependencyTree;
use crate::error::Result;

/// Gain of a swap in edge-weight terms, where lower weight is better:
/// `w(t,u) + w(u,v) - (w(t,v) + w(v,u))`. A positive gain means the swapped
/// tree is lighter.
pub fn enhancement_gain(w_tu: f64, w_uv: f64, w_tv: f64, w_vu: f64) -> f64 {
    w_tu + w_uv - (w_tv + w_vu)
}

/// A candidate swap on the path `t -> u -> v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Swap {
    pub t: usize,
    pub u: usize,
    pub v: usize,
    pub gain: f64,
}

impl Swap {
    pub fn apply(&self, tree: &mut DependencyTree) {
        tree.heads[self.v - 1] = self.t;
        tree.heads[self.u - 1] = self.v;
    }
}

/// Gain of swapping the arc `u -> v` of `tree` with respect to `scores`.
/// Scores are negated into weights. Returns `None` when `u` is the root or
/// the swap needs an absent arc; if instead a current arc is absent the
/// gain is infinite.
pub fn swap_gain(tree: &DependencyTree, scores: &DirectedScoreTable, u: usize, v: usize) -> Option<f64> {
    if u == 0 {
        return None;
    }
    let t = tree.head(u);
    let (s_tv, s_vu) = (scores.get(t, v)?, scores.get(v, u)?);
    match (scores.get(t, u), scores.get(u, v)) {
        (Some(s_tu), Some(s_uv)) => Some(enhancement_gain(-s_tu, -s_uv, -s_tv, -s_vu)),
        _ => Some(f64::INFINITY),
    }
}

/// The positive-gain swap with the largest gain, ties going to the
/// smallest `(u, v)`.
pub fn best_swap(tree: &DependencyTree, scores: &DirectedScoreTable) -> Option<Swap> {
    let mut best: Option<Swap> = None;
    let children = tree.children();
    for (u, kids) in children.iter().enumerate().skip(1) {
        for &v in kids {
            let Some(gain) = swap_gain(tree, scores, u, v) else {
                continue;
            };
            if gain > 0.0 && best.is_none_or(|b| gain > b.gain) {
                best = Some(Swap { t: tree.head(u), u, v, gain });
            }
        }
    }
    best
}

/// Runs `rounds` rounds; each applies the single best positive-gain swap,
/// stopping early when none is left. The directed score of the tree never
/// decreases.
pub fn local_enhancement(tree: &DependencyTree, scores: &DirectedScoreTable, rounds: usize) -> Result<DependencyTree> {
    tree.validate()?;
    let mut tree = tree.clone();
    for _ in 0..rounds {
        match best_swap(&tree, scores) {
            Some(swap) => swap.apply(&mut tree),
            None => break,
        }
    }
    Ok(tree)
}
