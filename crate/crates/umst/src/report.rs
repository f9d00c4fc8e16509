//! Text and CSV renderings of evaluation results and training logs.

use std::fmt::Write as _;

use umst_core::eval::{EvalReport, HeadToHead};
use umst_core::training::EpochStats;

use crate::pipeline::PruneStats;

/// A second system scored against the same gold data.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub b: EvalReport,
    pub head_to_head: HeadToHead,
    pub oracle: EvalReport,
}

pub fn eval_text(a: &EvalReport, cmp: Option<&Comparison>) -> String {
    let mut out = String::new();
    let line = |out: &mut String, name: &str, r: &EvalReport| {
        let _ = writeln!(out, "{name:<8} D-UAS {:>7.3}  U-UAS {:>7.3}", r.d_uas, r.u_uas);
    };
    let _ = writeln!(out, "scored tokens: {}", a.n_scored_tokens);
    line(&mut out, "A", a);
    if let Some(c) = cmp {
        line(&mut out, "B", &c.b);
        line(&mut out, "oracle", &c.oracle);
        let h = &c.head_to_head;
        let _ = writeln!(out, "sentences: A better {:.2}%  B better {:.2}%  tie {:.2}%", h.a_better, h.b_better, h.tie);
    }
    out
}

/// `metric,value` rows.
pub fn eval_csv(a: &EvalReport, cmp: Option<&Comparison>) -> String {
    let mut rows: Vec<(&str, String)> = vec![
        ("d_uas", format!("{:.6}", a.d_uas)),
        ("u_uas", format!("{:.6}", a.u_uas)),
        ("n_scored_tokens", a.n_scored_tokens.to_string()),
        ("d_correct", a.d_correct.to_string()),
        ("u_correct", a.u_correct.to_string()),
    ];
    if let Some(c) = cmp {
        rows.extend([
            ("b_d_uas", format!("{:.6}", c.b.d_uas)),
            ("b_u_uas", format!("{:.6}", c.b.u_uas)),
            ("a_better_pct", format!("{:.6}", c.head_to_head.a_better)),
            ("b_better_pct", format!("{:.6}", c.head_to_head.b_better)),
            ("tie_pct", format!("{:.6}", c.head_to_head.tie)),
            ("oracle_d_uas", format!("{:.6}", c.oracle.d_uas)),
            ("oracle_u_uas", format!("{:.6}", c.oracle.u_uas)),
        ]);
    }
    let mut out = String::from("metric,value\n");
    for (k, v) in rows {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

/// One row per sentence (1-based).
pub fn per_sentence_csv(a: &EvalReport, b: Option<&EvalReport>) -> String {
    let mut out = String::from("sentence,n_scored,a_d_correct,a_u_correct");
    if b.is_some() {
        out.push_str(",b_d_correct,b_u_correct");
    }
    out.push('\n');
    for (i, s) in a.per_sentence.iter().enumerate() {
        let _ = write!(out, "{},{},{},{}", i + 1, s.n_scored, s.d_correct, s.u_correct);
        if let Some(b) = b {
            let t = b.per_sentence[i];
            let _ = write!(out, ",{},{}", t.d_correct, t.u_correct);
        }
        out.push('\n');
    }
    out
}

pub fn training_log_csv(log: &[EpochStats]) -> String {
    let mut out = String::from("epoch,train_uas,updates\n");
    for e in log {
        let _ = writeln!(out, "{},{:.6},{}", e.epoch, e.train_uas, e.updates);
    }
    out
}

pub fn prune_stats_text(s: &PruneStats) -> String {
    format!(
        "sentences: {}\ncandidate edges: {}\nkept edges: {} ({:.2}%)\nedge reduction: {:.2}%\ngold edges kept: {} of {} ({:.2}%)\n",
        s.sentences,
        s.candidate_edges,
        s.kept_edges,
        s.kept_pct(),
        s.reduction_pct(),
        s.gold_kept,
        s.gold_edges,
        s.gold_kept_pct()
    )
}
