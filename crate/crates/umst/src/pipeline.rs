//! Corpus-level parsing and pruning statistics.

use rayon::prelude::*;
use umst_core::inference::{parse, Models, ParseConfig, Pruner};
use umst_core::{DependencyTree, Sentence};

use crate::error::{Error, Result};

/// Parses every sentence. With more than one thread the sentences are
/// spread over a rayon pool; results do not depend on the thread count
/// because each sentence draws from its own random stream.
pub fn parse_corpus(
    sentences: &[Sentence],
    models: &Models<'_>,
    config: &ParseConfig,
    threads: usize,
) -> Result<Vec<DependencyTree>> {
    models.check(config.system)?;
    let one = |(i, s): (usize, &Sentence)| -> Result<DependencyTree> {
        let tree = parse(s, models, config, i as u64)?;
        tree.validate()
            .map_err(|e| Error::Invariant(format!("sentence {}: parser produced an invalid tree: {e}", i + 1)))?;
        Ok(tree)
    };
    if threads <= 1 {
        sentences.iter().enumerate().map(one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {threads} threads: {e}")))?;
        pool.install(|| sentences.par_iter().enumerate().map(one).collect())
    }
}

/// Edge counts before and after length-dictionary pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PruneStats {
    pub sentences: usize,
    /// Undirected candidate edges without pruning: `n + n (n - 1) / 2`
    /// per sentence.
    pub candidate_edges: usize,
    pub kept_edges: usize,
    /// Gold attachments, counted as undirected edges.
    pub gold_edges: usize,
    pub gold_kept: usize,
}

impl PruneStats {
    pub fn kept_pct(&self) -> f64 {
        pct(self.kept_edges, self.candidate_edges)
    }

    pub fn reduction_pct(&self) -> f64 {
        100.0 - self.kept_pct()
    }

    pub fn gold_kept_pct(&self) -> f64 {
        pct(self.gold_kept, self.gold_edges)
    }
}

fn pct(a: usize, b: usize) -> f64 {
    if b == 0 {
        100.0
    } else {
        100.0 * a as f64 / b as f64
    }
}

pub fn prune_stats(pruner: &Pruner, corpus: &[Sentence]) -> PruneStats {
    let mut stats = PruneStats::default();
    for s in corpus {
        let n = s.len();
        stats.sentences += 1;
        stats.candidate_edges += n + n * n.saturating_sub(1) / 2;
        for i in 0..=n {
            for j in (i + 1)..=n {
                if i == 0 || pruner.keeps_pair(s, i, j) {
                    stats.kept_edges += 1;
                }
            }
        }
        for (k, &h) in s.gold_heads.iter().enumerate() {
            let m = k + 1;
            if h > n || h == m {
                continue;
            }
            stats.gold_edges += 1;
            if h == 0 || pruner.keeps_pair(s, h.min(m), h.max(m)) {
                stats.gold_kept += 1;
            }
        }
    }
    stats
}
