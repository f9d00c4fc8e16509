//! Attachment scores, head-to-head comparison and the per-sentence oracle.

use alloc::vec::Vec;

use crate::conll::{is_punctuation, DependencyTree, Sentence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SentenceScore {
    pub d_correct: usize,
    pub u_correct: usize,
    pub n_scored: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalReport {
    /// Directed unlabeled attachment score, in percent.
    pub d_uas: f64,
    /// Undirected unlabeled attachment score, in percent.
    pub u_uas: f64,
    pub n_scored_tokens: usize,
    pub d_correct: usize,
    pub u_correct: usize,
    pub per_sentence: Vec<SentenceScore>,
}

impl EvalReport {
    fn from_sentences(per_sentence: Vec<SentenceScore>) -> Self {
        let d_correct = per_sentence.iter().map(|s| s.d_correct).sum();
        let u_correct = per_sentence.iter().map(|s| s.u_correct).sum();
        let n = per_sentence.iter().map(|s| s.n_scored).sum();
        EvalReport {
            d_uas: percent(d_correct, n),
            u_uas: percent(u_correct, n),
            n_scored_tokens: n,
            d_correct,
            u_correct,
            per_sentence,
        }
    }
}

fn percent(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

fn check_lengths(what: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { what, expected, actual })
    }
}

/// Scores one sentence. With `exclude_punct`, punctuation tokens are not
/// scored as dependents (they still count as heads).
pub fn score_sentence(gold: &Sentence, pred: &DependencyTree, exclude_punct: bool) -> Result<SentenceScore> {
    check_lengths("predicted heads", gold.len(), pred.len())?;
    check_lengths("gold heads", gold.len(), gold.gold_heads.len())?;
    let mut gold_edges: Vec<(usize, usize)> =
        gold.gold_heads.iter().enumerate().map(|(k, &h)| (h.min(k + 1), h.max(k + 1))).collect();
    gold_edges.sort_unstable();

    let mut score = SentenceScore::default();
    for (k, (&g, &p)) in gold.gold_heads.iter().zip(&pred.heads).enumerate() {
        if exclude_punct && is_punctuation(&gold.tokens[k]) {
            continue;
        }
        let m = k + 1;
        score.n_scored += 1;
        if g == p {
            score.d_correct += 1;
        }
        if gold_edges.binary_search(&(p.min(m), p.max(m))).is_ok() {
            score.u_correct += 1;
        }
    }
    Ok(score)
}

pub fn score(gold: &[Sentence], pred: &[DependencyTree], exclude_punct: bool) -> Result<EvalReport> {
    check_lengths("predicted sentences", gold.len(), pred.len())?;
    let per_sentence =
        gold.iter().zip(pred).map(|(g, p)| score_sentence(g, p, exclude_punct)).collect::<Result<Vec<_>>>()?;
    Ok(EvalReport::from_sentences(per_sentence))
}

/// Percentages of sentences on which each system has the higher directed
/// score, and of ties. They sum to 100 (an empty corpus is all ties).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeadToHead {
    pub a_better: f64,
    pub b_better: f64,
    pub tie: f64,
}

pub fn head_to_head(
    gold: &[Sentence],
    pred_a: &[DependencyTree],
    pred_b: &[DependencyTree],
    exclude_punct: bool,
) -> Result<HeadToHead> {
    let a = score(gold, pred_a, exclude_punct)?;
    let b = score(gold, pred_b, exclude_punct)?;
    let (mut a_better, mut b_better) = (0, 0);
    for (sa, sb) in a.per_sentence.iter().zip(&b.per_sentence) {
        match sa.d_correct.cmp(&sb.d_correct) {
            core::cmp::Ordering::Greater => a_better += 1,
            core::cmp::Ordering::Less => b_better += 1,
            core::cmp::Ordering::Equal => {}
        }
    }
    let n = gold.len();
    if n == 0 {
        return Ok(HeadToHead { a_better: 0.0, b_better: 0.0, tie: 100.0 });
    }
    let (pa, pb) = (percent(a_better, n), percent(b_better, n));
    Ok(HeadToHead { a_better: pa, b_better: pb, tie: percent(n - a_better - b_better, n) })
}

/// Per sentence, the tree with more correct directed attachments (ties go
/// to `pred_a`).
pub fn oracle_select(
    gold: &[Sentence],
    pred_a: &[DependencyTree],
    pred_b: &[DependencyTree],
    exclude_punct: bool,
) -> Result<Vec<DependencyTree>> {
    let a = score(gold, pred_a, exclude_punct)?;
    let b = score(gold, pred_b, exclude_punct)?;
    Ok(a.per_sentence
        .iter()
        .zip(&b.per_sentence)
        .enumerate()
        .map(|(i, (sa, sb))| if sb.d_correct > sa.d_correct { pred_b[i].clone() } else { pred_a[i].clone() })
        .collect())
}

/// Scores of the per-sentence oracle of two systems.
pub fn oracle_combine(
    gold: &[Sentence],
    pred_a: &[DependencyTree],
    pred_b: &[DependencyTree],
    exclude_punct: bool,
) -> Result<EvalReport> {
    let chosen = oracle_select(gold, pred_a, pred_b, exclude_punct)?;
    score(gold, &chosen, exclude_punct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn chain() -> Sentence {
        Sentence::from_triples(&[("a", "X", 0), ("b", "X", 1), (".", ".", 1)])
    }

    #[test]
    fn perfect_prediction() {
        let g = [chain()];
        let r = score(&g, &[g[0].gold_tree()], false).unwrap();
        assert_eq!((r.d_uas, r.u_uas, r.n_scored_tokens), (100.0, 100.0, 3));
    }

    #[test]
    fn reversed_chain_is_undirected_correct_only() {
        let g = [Sentence::from_triples(&[("a", "X", 0), ("b", "X", 1)])];
        let reversed = DependencyTree::new(vec![2, 0]);
        let r = score(&g, &[reversed], false).unwrap();
        assert_eq!(r.d_uas, 0.0);
        // {1,2} is a gold edge; {2,0} is not.
        assert_eq!(r.u_uas, 50.0);
    }

    #[test]
    fn punctuation_is_excluded_as_dependent() {
        let g = [chain()];
        let pred = DependencyTree::new(vec![0, 1, 2]);
        let with = score(&g, core::slice::from_ref(&pred), false).unwrap();
        let without = score(&g, &[pred], true).unwrap();
        assert_eq!(with.n_scored_tokens, 3);
        assert_eq!(without.n_scored_tokens, 2);
        assert_eq!(without.d_uas, 100.0);
    }

    #[test]
    fn misaligned_inputs() {
        let g = [chain()];
        assert!(score(&g, &[], false).is_err());
        assert!(score(&g, &[DependencyTree::new(vec![0])], false).is_err());
    }

    #[test]
    fn head_to_head_cases() {
        let g = [chain(), chain()];
        let gold: Vec<_> = g.iter().map(|s| s.gold_tree()).collect();
        let bad = vec![DependencyTree::new(vec![0, 0, 0]); 2];
        let same = head_to_head(&g, &gold, &gold, false).unwrap();
        assert_eq!((same.a_better, same.b_better, same.tie), (0.0, 0.0, 100.0));
        let better = head_to_head(&g, &gold, &bad, false).unwrap();
        assert_eq!((better.a_better, better.b_better, better.tie), (100.0, 0.0, 0.0));
    }

    #[test]
    fn oracle_picks_the_better_tree() {
        let g = [chain(), chain()];
        let a = vec![g[0].gold_tree(), DependencyTree::new(vec![0, 0, 0])];
        let b = vec![DependencyTree::new(vec![0, 0, 0]), g[1].gold_tree()];
        let oracle = oracle_combine(&g, &a, &b, false).unwrap();
        assert_eq!(oracle.d_uas, 100.0);
        assert_eq!(oracle_combine(&g, &a, &a, false).unwrap(), score(&g, &a, false).unwrap());
    }
}
