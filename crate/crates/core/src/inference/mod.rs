//! Parsing a sentence: score encoding, pruning, MST inference, directing
//! and local enhancement, plus the directed Chu-Liu-Edmonds baseline.

mod cle;
mod direct;
mod encode;
mod enhance;
mod prune;

use core::fmt;
use core::str::FromStr;

pub use cle::cle_directed_mst;
pub use direct::{direct_tree, orient_from_root};
pub use encode::{build_parse_graph, directed_score_table, DirectedScoreTable, ParseGraph};
pub use enhance::{best_swap, enhancement_gain, local_enhancement, swap_gain, Swap};
pub use prune::{build_pruner, ArcDirection, Pruner};

use crate::conll::{DependencyTree, Sentence};
use crate::error::{Error, Result};
use crate::features::{FeatureMode, Model};
use crate::mst::{boruvka_msf, randomized_msf, RandomSource};

/// How two directed arc scores merge into one undirected edge score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Combiner {
    #[default]
    Mean,
    Product,
}

impl Combiner {
    pub fn name(self) -> &'static str {
        match self {
            Combiner::Mean => "mean",
            Combiner::Product => "product",
        }
    }
}

impl FromStr for Combiner {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Combiner::Mean),
            "product" => Ok(Combiner::Product),
            _ => Err(Error::Config(alloc::format!("unknown combiner {s:?}"))),
        }
    }
}

pub fn combine(s_uv: f64, s_vu: f64, combiner: Combiner) -> f64 {
    match combiner {
        Combiner::Mean => (s_uv + s_vu) / 2.0,
        Combiner::Product => s_uv * s_vu,
    }
}

/// The four parsing systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    /// Directed features, Chu-Liu-Edmonds inference.
    DMst,
    /// Undirected features, undirected MST inference.
    UMstUf,
    /// As `UMstUf`, followed by local enhancement under a d-mst model.
    UMstUfLep,
    /// Directed features merged into undirected scores, undirected MST inference.
    UMstDf,
}

impl System {
    pub const ALL: [System; 4] = [System::DMst, System::UMstUfLep, System::UMstUf, System::UMstDf];

    pub fn name(self) -> &'static str {
        match self {
            System::DMst => "d-mst",
            System::UMstUf => "u-mst-uf",
            System::UMstUfLep => "u-mst-uf-lep",
            System::UMstDf => "u-mst-df",
        }
    }

    pub fn feature_mode(self) -> FeatureMode {
        match self {
            System::DMst | System::UMstDf => FeatureMode::Directed,
            System::UMstUf | System::UMstUfLep => FeatureMode::Undirected,
        }
    }

    pub fn needs_directed_model(self) -> bool {
        self == System::UMstUfLep
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        System::ALL
            .into_iter()
            .find(|sys| sys.name() == s)
            .ok_or_else(|| Error::Config(alloc::format!("unknown system {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MstBackend {
    #[default]
    Randomized,
    Boruvka,
}

impl MstBackend {
    pub fn name(self) -> &'static str {
        match self {
            MstBackend::Randomized => "randomized",
            MstBackend::Boruvka => "boruvka",
        }
    }
}

impl FromStr for MstBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "randomized" => Ok(MstBackend::Randomized),
            "boruvka" => Ok(MstBackend::Boruvka),
            _ => Err(Error::Config(alloc::format!("unknown MST backend {s:?}"))),
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_ENHANCEMENT_ROUNDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseConfig {
    pub system: System,
    pub enhancement_rounds: usize,
    pub backend: MstBackend,
    pub seed: u64,
    /// Length-dictionary pruning for the undirected systems. The d-mst
    /// baseline always parses the complete directed graph.
    pub pruning: bool,
}

impl ParseConfig {
    pub fn new(system: System) -> Self {
        ParseConfig {
            system,
            enhancement_rounds: DEFAULT_ENHANCEMENT_ROUNDS,
            backend: MstBackend::default(),
            seed: DEFAULT_SEED,
            pruning: true,
        }
    }
}

/// Everything a system needs at parse time.
#[derive(Debug, Clone, Copy)]
pub struct Models<'a> {
    pub primary: &'a Model,
    /// d-mst model supplying the enhancement scores of `u-mst-uf-lep`.
    pub enhancement: Option<&'a Model>,
    pub pruner: Option<&'a Pruner>,
}

impl<'a> Models<'a> {
    pub fn new(primary: &'a Model) -> Self {
        Models { primary, enhancement: None, pruner: None }
    }

    /// Checks that the models fit the system.
    pub fn check(&self, system: System) -> Result<()> {
        self.primary.expect_mode(system.feature_mode())?;
        if system.needs_directed_model() {
            self.enhancement.ok_or(Error::MissingDirectedModel(system.name()))?.expect_mode(FeatureMode::Directed)?;
        }
        Ok(())
    }
}

/// Parses one sentence. `sentence_index` selects the random stream of the
/// randomized MST backend so results do not depend on processing order.
pub fn parse(
    sentence: &Sentence,
    models: &Models<'_>,
    config: &ParseConfig,
    sentence_index: u64,
) -> Result<DependencyTree> {
    models.check(config.system)?;
    if sentence.is_empty() {
        return Ok(DependencyTree::default());
    }
    let pruner = if config.pruning { models.pruner } else { None };
    match config.system {
        System::DMst => {
            let table = directed_score_table(sentence, models.primary, None)?;
            Ok(cle_directed_mst(&table))
        }
        System::UMstUf | System::UMstDf | System::UMstUfLep => {
            let tree = undirected_parse(sentence, models.primary, pruner, config, sentence_index)?;
            if config.system != System::UMstUfLep {
                return Ok(tree);
            }
            let directed = models.enhancement.ok_or(Error::MissingDirectedModel(System::UMstUfLep.name()))?;
            let table = directed_score_table(sentence, directed, pruner)?;
            local_enhancement(&tree, &table, config.enhancement_rounds)
        }
    }
}

/// Encode, run the undirected MST and direct the result.
pub fn undirected_parse(
    sentence: &Sentence,
    model: &Model,
    pruner: Option<&Pruner>,
    config: &ParseConfig,
    sentence_index: u64,
) -> Result<DependencyTree> {
    let (graph, _) = build_parse_graph(sentence, model, pruner)?;
    let forest = match config.backend {
        MstBackend::Randomized => {
            let mut rng = RandomSource::for_item(config.seed, sentence_index);
            randomized_msf(&graph.graph, &mut rng)
        }
        MstBackend::Boruvka => boruvka_msf(&graph.graph),
    };
    direct_tree(&graph, &forest)
}

impl fmt::Display for Combiner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for MstBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureMode;
    use alloc::vec;

    #[test]
    fn combiners() {
        assert_eq!(combine(4.0, 2.0, Combiner::Mean), 3.0);
        assert_eq!(combine(-1.5, -1.5, Combiner::Mean), -1.5);
        assert_eq!(combine(2.0, 3.0, Combiner::Product), 6.0);
    }

    #[test]
    fn names_round_trip() {
        for sys in System::ALL {
            assert_eq!(sys.name().parse::<System>().unwrap(), sys);
        }
        assert!("x".parse::<System>().is_err());
        assert_eq!("product".parse::<Combiner>().unwrap(), Combiner::Product);
        assert_eq!("boruvka".parse::<MstBackend>().unwrap(), MstBackend::Boruvka);
    }

    #[test]
    fn one_token_graph() {
        let s = Sentence::from_triples(&[("Hi", "UH", 0)]);
        let model = Model::new(FeatureMode::Undirected, Combiner::Mean, 10);
        let (g, table) = build_parse_graph(&s, &model, None).unwrap();
        assert_eq!(g.graph.n_vertices(), 2);
        assert_eq!(g.graph.n_edges(), 1);
        assert!(table.is_none());
    }

    #[test]
    fn complete_graph_edge_count() {
        let s = Sentence::from_triples(&[("a", "A", 0), ("b", "B", 1), ("c", "C", 1), ("d", "D", 3), ("e", "E", 3)]);
        let model = Model::new(FeatureMode::Directed, Combiner::Mean, 10);
        let (g, table) = build_parse_graph(&s, &model, None).unwrap();
        assert_eq!(g.graph.n_edges(), 5 + 5 * 4 / 2);
        assert!(table.is_some());
    }

    #[test]
    fn lep_without_directed_model_is_an_error() {
        let s = Sentence::from_triples(&[("a", "A", 0)]);
        let model = Model::new(FeatureMode::Undirected, Combiner::Mean, 10);
        let err = parse(&s, &Models::new(&model), &ParseConfig::new(System::UMstUfLep), 0).unwrap_err();
        assert_eq!(err, Error::MissingDirectedModel("u-mst-uf-lep"));
        let err = parse(&s, &Models::new(&model), &ParseConfig::new(System::DMst), 0).unwrap_err();
        assert!(matches!(err, Error::FeatureMode { .. }));
    }

    #[test]
    fn empty_sentence_parses_to_empty_tree() {
        let s = Sentence::default();
        let model = Model::new(FeatureMode::Directed, Combiner::Mean, 10);
        let tree = parse(&s, &Models::new(&model), &ParseConfig::new(System::DMst), 0).unwrap();
        assert_eq!(tree.heads, vec![]);
    }
}
