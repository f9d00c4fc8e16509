//! Experiment settings from a TOML file, overridden by command-line flags.

use std::path::Path;

use serde::Deserialize;
use umst_core::features::DEFAULT_HASH_BITS;
use umst_core::inference::{Combiner, MstBackend, ParseConfig, System, DEFAULT_ENHANCEMENT_ROUNDS, DEFAULT_SEED};
use umst_core::training::{TrainConfig, DEFAULT_EPOCHS};

use crate::error::{at, Error, Result};

/// Every key is optional; missing keys fall back to the defaults.
///
/// ```toml
/// system = "u-mst-uf-lep"
/// combiner = "mean"
/// enhancement_rounds = 5
/// mst_backend = "randomized"
/// seed = 24301
/// pruning = "length-dictionary"
/// epochs = 10
/// hash_bits = 22
/// shuffle = false
/// threads = 1
/// punct_filter = true
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub system: Option<String>,
    pub combiner: Option<String>,
    pub enhancement_rounds: Option<usize>,
    pub mst_backend: Option<String>,
    pub seed: Option<u64>,
    pub pruning: Option<String>,
    pub epochs: Option<usize>,
    pub hash_bits: Option<u8>,
    pub shuffle: Option<bool>,
    pub threads: Option<usize>,
    pub punct_filter: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(at(path))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Values set in `over` replace those in `self`.
    pub fn merge(self, over: ConfigFile) -> ConfigFile {
        ConfigFile {
            system: over.system.or(self.system),
            combiner: over.combiner.or(self.combiner),
            enhancement_rounds: over.enhancement_rounds.or(self.enhancement_rounds),
            mst_backend: over.mst_backend.or(self.mst_backend),
            seed: over.seed.or(self.seed),
            pruning: over.pruning.or(self.pruning),
            epochs: over.epochs.or(self.epochs),
            hash_bits: over.hash_bits.or(self.hash_bits),
            shuffle: over.shuffle.or(self.shuffle),
            threads: over.threads.or(self.threads),
            punct_filter: over.punct_filter.or(self.punct_filter),
        }
    }
}

/// Which systems a command applies to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemChoice {
    One(System),
    All,
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub system: Option<SystemChoice>,
    pub combiner: Combiner,
    pub enhancement_rounds: usize,
    pub backend: MstBackend,
    pub seed: u64,
    pub pruning: bool,
    pub epochs: usize,
    pub hash_bits: u8,
    pub shuffle: bool,
    pub threads: usize,
    pub exclude_punct: bool,
}

impl Settings {
    pub fn resolve(c: &ConfigFile) -> Result<Self> {
        let system = match c.system.as_deref() {
            None => None,
            Some("all") => Some(SystemChoice::All),
            Some(s) => Some(SystemChoice::One(s.parse()?)),
        };
        let pruning = match c.pruning.as_deref() {
            None | Some("length-dictionary") => true,
            Some("none") => false,
            Some(other) => {
                return Err(Error::Config(format!("pruning must be `none` or `length-dictionary`, not {other:?}")))
            }
        };
        let hash_bits = c.hash_bits.unwrap_or(DEFAULT_HASH_BITS);
        if !(1..=32).contains(&hash_bits) {
            return Err(Error::Config(format!("hash_bits {hash_bits} outside 1..=32")));
        }
        let threads = c.threads.unwrap_or(1);
        if threads == 0 {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(Settings {
            system,
            combiner: c.combiner.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            enhancement_rounds: c.enhancement_rounds.unwrap_or(DEFAULT_ENHANCEMENT_ROUNDS),
            backend: c.mst_backend.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
            seed: c.seed.unwrap_or(DEFAULT_SEED),
            pruning,
            epochs: c.epochs.unwrap_or(DEFAULT_EPOCHS),
            hash_bits,
            shuffle: c.shuffle.unwrap_or(false),
            threads,
            exclude_punct: c.punct_filter.unwrap_or(true),
        })
    }

    pub fn train_config(&self, system: System) -> TrainConfig {
        TrainConfig {
            system,
            epochs: self.epochs,
            seed: self.seed,
            shuffle: self.shuffle,
            hash_bits: self.hash_bits,
            combiner: self.combiner,
            backend: self.backend,
            pruning: self.pruning,
        }
    }

    pub fn parse_config(&self, system: System) -> ParseConfig {
        ParseConfig {
            system,
            enhancement_rounds: self.enhancement_rounds,
            backend: self.backend,
            seed: self.seed,
            pruning: self.pruning,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let s = Settings::resolve(&ConfigFile::default()).unwrap();
        assert_eq!(s.system, None);
        assert_eq!(s.enhancement_rounds, 5);
        assert_eq!(s.backend, MstBackend::Randomized);
        assert!(s.pruning && s.exclude_punct);
        assert_eq!(s.threads, 1);
    }

    #[test]
    fn flags_win_over_the_file() {
        let file: ConfigFile = toml::from_str("system = \"d-mst\"\nseed = 3\ncombiner = \"product\"").unwrap();
        let flags = ConfigFile { seed: Some(9), pruning: Some("none".into()), ..Default::default() };
        let s = Settings::resolve(&file.merge(flags)).unwrap();
        assert_eq!(s.system, Some(SystemChoice::One(System::DMst)));
        assert_eq!(s.seed, 9);
        assert_eq!(s.combiner, Combiner::Product);
        assert!(!s.pruning);
    }

    #[test]
    fn bad_values() {
        assert!(toml::from_str::<ConfigFile>("colour = 1").is_err());
        for c in [
            ConfigFile { system: Some("x".into()), ..Default::default() },
            ConfigFile { pruning: Some("some".into()), ..Default::default() },
            ConfigFile { mst_backend: Some("prim".into()), ..Default::default() },
            ConfigFile { threads: Some(0), ..Default::default() },
            ConfigFile { hash_bits: Some(40), ..Default::default() },
        ] {
            assert!(Settings::resolve(&c).is_err(), "{c:?}");
        }
    }
}
