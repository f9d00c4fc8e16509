//! Averaged structured perceptron with inference in the loop.
//!
//! Directed-feature systems update on directed arcs against the gold tree;
//! undirected-feature systems update on unordered edges against the
//! undirected gold tree. Training-time inference is the same pipeline the
//! system uses at parse time, except that `u-mst-uf-lep` trains exactly like
//! `u-mst-uf` (enhancement only runs at parse time, with d-mst scores).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::conll::{DependencyTree, Sentence};
use crate::error::{Error, Result};
use crate::features::{
    directed_feature_strings, hash_feature, undirected_feature_strings, FeatureMode, Model, DEFAULT_HASH_BITS,
};
use crate::inference::{
    cle_directed_mst, directed_score_table, undirected_parse, Combiner, MstBackend, ParseConfig, Pruner, System,
    DEFAULT_SEED,
};
use crate::mst::RandomSource;

pub const DEFAULT_EPOCHS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrainConfig {
    pub system: System,
    pub epochs: usize,
    pub seed: u64,
    pub shuffle: bool,
    pub hash_bits: u8,
    pub combiner: Combiner,
    pub backend: MstBackend,
    pub pruning: bool,
}

impl TrainConfig {
    pub fn new(system: System) -> Self {
        TrainConfig {
            system,
            epochs: DEFAULT_EPOCHS,
            seed: DEFAULT_SEED,
            shuffle: false,
            hash_bits: DEFAULT_HASH_BITS,
            combiner: Combiner::Mean,
            backend: MstBackend::Randomized,
            pruning: true,
        }
    }

    fn parse_config(&self) -> ParseConfig {
        ParseConfig {
            system: self.system,
            enhancement_rounds: 0,
            backend: self.backend,
            seed: self.seed,
            pruning: self.pruning,
        }
    }
}

/// A trained system: averaged weights plus the pruner it was trained with.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub system: System,
    pub model: Model,
    pub pruner: Option<Pruner>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochStats {
    pub epoch: usize,
    /// Directed attachment score of the predictions made during the epoch.
    pub train_uas: f64,
    /// Sentences whose prediction differed from gold.
    pub updates: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub trained: TrainedModel,
    pub log: Vec<EpochStats>,
}

/// Weights plus the running sums needed to average them. An update made
/// before step `t` (0-based) is missing from the first `t` snapshots, so
/// `summed` accumulates `t * delta` and the average over `T` snapshots is
/// `w - summed / T`.
struct Perceptron {
    model: Model,
    summed: Vec<f64>,
    step: f64,
}

impl Perceptron {
    fn new(model: Model) -> Self {
        let summed = alloc::vec![0.0; model.weights.len()];
        Perceptron { model, summed, step: 0.0 }
    }

    fn add(&mut self, slot: u32, delta: f64) {
        self.model.weights[slot as usize] += delta;
        self.summed[slot as usize] += self.step * delta;
    }

    fn add_features(&mut self, features: &[String], delta: f64) {
        for f in features {
            let slot = hash_feature(f, self.model.hash_bits);
            self.add(slot, delta);
        }
    }

    fn tick(&mut self) {
        self.step += 1.0;
    }

    fn averaged(mut self) -> Model {
        for (w, s) in self.model.weights.iter_mut().zip(&self.summed) {
            *w -= s / self.step;
        }
        self.model
    }
}

/// Trains one system on `corpus`.
pub fn train(corpus: &[Sentence], config: &TrainConfig) -> Result<TrainOutcome> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if config.epochs == 0 {
        return Err(Error::Config("epochs must be at least 1".into()));
    }
    for s in corpus {
        if s.gold_heads.len() != s.len() {
            return Err(Error::LengthMismatch { what: "gold heads", expected: s.len(), actual: s.gold_heads.len() });
        }
    }
    let mode = config.system.feature_mode();
    let pruner = (config.pruning && config.system != System::DMst).then(|| Pruner::build(corpus));
    let mut perceptron = Perceptron::new(Model::new(mode, config.combiner, config.hash_bits));
    let parse_config = config.parse_config();
    let mut order: Vec<usize> = (0..corpus.len()).collect();
    let mut rng = RandomSource::new(config.seed);
    let mut log = Vec::with_capacity(config.epochs);

    for epoch in 0..config.epochs {
        if config.shuffle {
            rng.shuffle(&mut order);
        }
        let (mut correct, mut total, mut updates) = (0usize, 0usize, 0usize);
        for &i in &order {
            let sentence = &corpus[i];
            let stream = (epoch * corpus.len() + i) as u64;
            let predicted = predict(sentence, &perceptron.model, pruner.as_ref(), &parse_config, stream)?;
            correct += predicted.heads.iter().zip(&sentence.gold_heads).filter(|(p, g)| p == g).count();
            total += sentence.len();
            if update(&mut perceptron, sentence, &predicted)? {
                updates += 1;
            }
            perceptron.tick();
        }
        log.push(EpochStats {
            epoch: epoch + 1,
            train_uas: if total == 0 { 0.0 } else { 100.0 * correct as f64 / total as f64 },
            updates,
        });
    }

    Ok(TrainOutcome { trained: TrainedModel { system: config.system, model: perceptron.averaged(), pruner }, log })
}

fn predict(
    sentence: &Sentence,
    model: &Model,
    pruner: Option<&Pruner>,
    config: &ParseConfig,
    stream: u64,
) -> Result<DependencyTree> {
    if sentence.is_empty() {
        return Ok(DependencyTree::default());
    }
    match config.system {
        System::DMst => Ok(cle_directed_mst(&directed_score_table(sentence, model, None)?)),
        _ => undirected_parse(sentence, model, pruner, config, stream),
    }
}

/// `w += Phi(gold) - Phi(predicted)`. Returns whether anything changed.
fn update(perceptron: &mut Perceptron, sentence: &Sentence, predicted: &DependencyTree) -> Result<bool> {
    let n = sentence.len();
    let mut changed = false;
    match perceptron.model.mode {
        FeatureMode::Directed => {
            for m in 1..=n {
                let (gold, pred) = (sentence.gold_heads[m - 1], predicted.heads[m - 1]);
                if gold == pred {
                    continue;
                }
                changed = true;
                if gold <= n && gold != m {
                    let f = directed_feature_strings(sentence, gold, m)?;
                    perceptron.add_features(&f, 1.0);
                }
                let f = directed_feature_strings(sentence, pred, m)?;
                perceptron.add_features(&f, -1.0);
            }
        }
        FeatureMode::Undirected => {
            let gold = sentence.gold_tree().undirected_edges();
            let pred = predicted.undirected_edges();
            for &(i, j) in gold.iter().filter(|e| pred.binary_search(e).is_err()) {
                changed = true;
                if i != j && j <= n {
                    let f = undirected_feature_strings(sentence, i, j)?;
                    perceptron.add_features(&f, 1.0);
                }
            }
            for &(i, j) in pred.iter().filter(|e| gold.binary_search(e).is_err()) {
                changed = true;
                let f = undirected_feature_strings(sentence, i, j)?;
                perceptron.add_features(&f, -1.0);
            }
        }
    }
    Ok(changed)
}

/// Trains every requested system. `u-mst-uf-lep` needs d-mst scores at parse
/// time, so d-mst is trained whenever it is requested; it shares its
/// training run with `u-mst-uf`, whose procedure is identical.
pub fn train_suite(
    corpus: &[Sentence],
    systems: &[System],
    base: &TrainConfig,
) -> Result<BTreeMap<System, TrainOutcome>> {
    let mut wanted: Vec<System> = systems.to_vec();
    if wanted.contains(&System::UMstUfLep) && !wanted.contains(&System::DMst) {
        wanted.push(System::DMst);
    }
    wanted.sort_unstable();
    wanted.dedup();

    let mut out = BTreeMap::new();
    for system in wanted {
        let twin = match system {
            System::UMstUfLep => out.get(&System::UMstUf),
            System::UMstUf => out.get(&System::UMstUfLep),
            _ => None,
        };
        let outcome = match twin {
            Some(t) => {
                let mut t: TrainOutcome = Clone::clone(t);
                t.trained.system = system;
                t
            }
            None => train(corpus, &TrainConfig { system, ..*base })?,
        };
        out.insert(system, outcome);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_is_an_error() {
        assert_eq!(train(&[], &TrainConfig::new(System::DMst)).unwrap_err(), Error::EmptyCorpus);
    }

    #[test]
    fn zero_epochs_is_an_error() {
        let corpus = [Sentence::from_triples(&[("a", "A", 0)])];
        let config = TrainConfig { epochs: 0, ..TrainConfig::new(System::DMst) };
        assert!(train(&corpus, &config).is_err());
    }

    #[test]
    fn suite_adds_d_mst_for_lep() {
        let corpus = [Sentence::from_triples(&[("a", "A", 0), ("b", "B", 1)])];
        let config = TrainConfig { epochs: 1, hash_bits: 12, ..TrainConfig::new(System::DMst) };
        let suite = train_suite(&corpus, &[System::UMstUfLep], &config).unwrap();
        assert_eq!(suite.keys().copied().collect::<Vec<_>>(), [System::DMst, System::UMstUfLep]);
        assert_eq!(suite[&System::UMstUfLep].trained.model.mode, FeatureMode::Undirected);
    }
}
