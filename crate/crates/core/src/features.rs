//! First-order arc features, feature hashing and linear scoring.
//!
//! Template table. `A` and `B` are the two endpoints of the arc: head and
//! modifier for directed features, left and right token for undirected
//! ones. `w` is the word form, `p` the part of speech, `p-`/`p+` the part of
//! speech of the token before/after an endpoint and `x` a token strictly
//! between the endpoints.
//!
//! | name         | values                 |
//! |--------------|------------------------|
//! | `AwAp`       | wA pA                  |
//! | `Aw`         | wA                     |
//! | `Ap`         | pA                     |
//! | `BwBp`       | wB pB                  |
//! | `Bw`         | wB                     |
//! | `Bp`         | pB                     |
//! | `AwApBwBp`   | wA pA wB pB            |
//! | `ApBwBp`     | pA wB pB               |
//! | `AwBwBp`     | wA wB pB               |
//! | `AwApBp`     | wA pA pB               |
//! | `AwApBw`     | wA pA wB               |
//! | `AwBw`       | wA wB                  |
//! | `ApBp`       | pA pB                  |
//! | `ApXpBp`     | pA px pB, once per x   |
//! | `ApAp+Bp-Bp` | pA pA+1 pB-1 pB        |
//! | `Ap-ApBp-Bp` | pA-1 pA pB-1 pB        |
//! | `ApAp+BpBp+` | pA pA+1 pB pB+1        |
//! | `Ap-ApBpBp+` | pA-1 pA pB pB+1        |
//!
//! Every template fires twice: once bare and once conjoined with the binned
//! distance (1, 2, 3, 4, 5, 6-10, 11+). Directed features also conjoin the
//! attachment direction with the distance (`R` when the modifier follows
//! its head, `L` otherwise) and are prefixed `d:`; undirected ones have no
//! direction and are prefixed `u:`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;
use core::hash::Hasher;

use fnv::FnvHasher;

use crate::conll::Sentence;
use crate::error::{Error, Result};
use crate::inference::Combiner;

pub const DEFAULT_HASH_BITS: u8 = 22;

const ROOT: &str = "<root>";
const BEFORE: &str = "<s>";
const AFTER: &str = "</s>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureMode {
    Directed,
    Undirected,
}

impl FeatureMode {
    pub fn name(self) -> &'static str {
        match self {
            FeatureMode::Directed => "directed",
            FeatureMode::Undirected => "undirected",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "directed" => Some(FeatureMode::Directed),
            "undirected" => Some(FeatureMode::Undirected),
            _ => None,
        }
    }
}

/// Hashed feature slots of one arc, sorted. A slot may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct FeatureVector {
    pub indices: Vec<u32>,
}

impl FeatureVector {
    pub fn from_slots(mut indices: Vec<u32>) -> Self {
        indices.sort_unstable();
        FeatureVector { indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Slot of a feature string in a table of `2^hash_bits` entries.
pub fn hash_feature(feature: &str, hash_bits: u8) -> u32 {
    let mut hasher = FnvHasher::default();
    hasher.write(feature.as_bytes());
    let h = hasher.finish();
    let folded = h ^ (h >> 32);
    (folded & ((1u64 << hash_bits) - 1)) as u32
}

fn check_arc(sentence: &Sentence, a: usize, b: usize, b_may_be_root: bool) -> Result<()> {
    let n = sentence.len();
    for x in [a, b] {
        if x > n {
            return Err(Error::TokenIndex { index: x, n_tokens: n });
        }
    }
    if b == 0 && !b_may_be_root {
        return Err(Error::TokenIndex { index: 0, n_tokens: n });
    }
    if a == b {
        return Err(Error::SelfArc(a));
    }
    Ok(())
}

fn form(sentence: &Sentence, i: usize) -> &str {
    match sentence.token(i) {
        Some(t) => &t.form,
        None => ROOT,
    }
}

fn pos(sentence: &Sentence, i: isize) -> &str {
    if i < 0 {
        BEFORE
    } else if i == 0 {
        ROOT
    } else {
        match sentence.token(i as usize) {
            Some(t) => &t.postag,
            None => AFTER,
        }
    }
}

fn distance_bin(d: usize) -> &'static str {
    match d {
        0 | 1 => "1",
        2 => "2",
        3 => "3",
        4 => "4",
        5 => "5",
        6..=10 => "6-10",
        _ => "11+",
    }
}

/// Expands the template table for endpoints `a`, `b`, calling `sink` once
/// per feature string.
fn expand(sentence: &Sentence, a: usize, b: usize, prefix: &str, conjunction: &str, sink: &mut impl FnMut(&str)) {
    let (ai, bi) = (a as isize, b as isize);
    let (wa, pa) = (form(sentence, a), pos(sentence, ai));
    let (wb, pb) = (form(sentence, b), pos(sentence, bi));
    let (pa_prev, pa_next) = (pos(sentence, ai - 1), pos(sentence, ai + 1));
    let (pb_prev, pb_next) = (pos(sentence, bi - 1), pos(sentence, bi + 1));

    let mut buf = String::with_capacity(64);
    let mut fire = |name: &str, values: &[&str]| {
        buf.clear();
        buf.push_str(prefix);
        buf.push_str(name);
        buf.push('=');
        for (k, v) in values.iter().enumerate() {
            if k > 0 {
                buf.push('|');
            }
            buf.push_str(v);
        }
        sink(&buf);
        buf.push('&');
        buf.push_str(conjunction);
        sink(&buf);
    };

    fire("AwAp", &[wa, pa]);
    fire("Aw", &[wa]);
    fire("Ap", &[pa]);
    fire("BwBp", &[wb, pb]);
    fire("Bw", &[wb]);
    fire("Bp", &[pb]);
    fire("AwApBwBp", &[wa, pa, wb, pb]);
    fire("ApBwBp", &[pa, wb, pb]);
    fire("AwBwBp", &[wa, wb, pb]);
    fire("AwApBp", &[wa, pa, pb]);
    fire("AwApBw", &[wa, pa, wb]);
    fire("AwBw", &[wa, wb]);
    fire("ApBp", &[pa, pb]);
    for x in (a.min(b) + 1)..a.max(b) {
        fire("ApXpBp", &[pa, pos(sentence, x as isize), pb]);
    }
    fire("ApAp+Bp-Bp", &[pa, pa_next, pb_prev, pb]);
    fire("Ap-ApBp-Bp", &[pa_prev, pa, pb_prev, pb]);
    fire("ApAp+BpBp+", &[pa, pa_next, pb, pb_next]);
    fire("Ap-ApBpBp+", &[pa_prev, pa, pb, pb_next]);
}

fn for_each_directed(sentence: &Sentence, head: usize, m: usize, sink: &mut impl FnMut(&str)) -> Result<()> {
    check_arc(sentence, head, m, false)?;
    let mut conjunction = String::new();
    let direction = if m > head { 'R' } else { 'L' };
    let _ = write!(conjunction, "{direction}{}", distance_bin(head.abs_diff(m)));
    expand(sentence, head, m, "d:", &conjunction, sink);
    Ok(())
}

fn for_each_undirected(sentence: &Sentence, i: usize, j: usize, sink: &mut impl FnMut(&str)) -> Result<()> {
    let (left, right) = (i.min(j), i.max(j));
    check_arc(sentence, left, right, true)?;
    expand(sentence, left, right, "u:", distance_bin(right - left), sink);
    Ok(())
}

/// Feature strings of the arc `head -> m`, before hashing.
pub fn directed_feature_strings(sentence: &Sentence, head: usize, m: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for_each_directed(sentence, head, m, &mut |f| out.push(f.into()))?;
    Ok(out)
}

/// Feature strings of the unordered pair `{i, j}`, before hashing.
pub fn undirected_feature_strings(sentence: &Sentence, i: usize, j: usize) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for_each_undirected(sentence, i, j, &mut |f| out.push(f.into()))?;
    Ok(out)
}

pub fn extract_directed(sentence: &Sentence, head: usize, m: usize, hash_bits: u8) -> Result<FeatureVector> {
    let mut slots = Vec::with_capacity(48);
    for_each_directed(sentence, head, m, &mut |f| slots.push(hash_feature(f, hash_bits)))?;
    Ok(FeatureVector::from_slots(slots))
}

/// Undirected features of the pair `{i, j}`; argument order does not matter.
pub fn extract_undirected(sentence: &Sentence, i: usize, j: usize, hash_bits: u8) -> Result<FeatureVector> {
    let mut slots = Vec::with_capacity(48);
    for_each_undirected(sentence, i, j, &mut |f| slots.push(hash_feature(f, hash_bits)))?;
    Ok(FeatureVector::from_slots(slots))
}

/// Linear arc-factored model over hashed features.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub hash_bits: u8,
    pub mode: FeatureMode,
    pub combiner: Combiner,
    pub weights: Vec<f64>,
}

impl Model {
    pub fn new(mode: FeatureMode, combiner: Combiner, hash_bits: u8) -> Self {
        assert!((1..=32).contains(&hash_bits), "hash_bits must be in 1..=32");
        Model { hash_bits, mode, combiner, weights: vec![0.0; 1usize << hash_bits] }
    }

    pub fn score(&self, fv: &FeatureVector) -> f64 {
        score(self, fv)
    }

    /// Score of the arc `head -> m` (directed models only).
    pub fn arc_score(&self, sentence: &Sentence, head: usize, m: usize) -> Result<f64> {
        self.expect_mode(FeatureMode::Directed)?;
        let mut total = 0.0;
        for_each_directed(sentence, head, m, &mut |f| total += self.weights[hash_feature(f, self.hash_bits) as usize])?;
        Ok(total)
    }

    /// Score of the pair `{i, j}` (undirected models only).
    pub fn pair_score(&self, sentence: &Sentence, i: usize, j: usize) -> Result<f64> {
        self.expect_mode(FeatureMode::Undirected)?;
        let mut total = 0.0;
        for_each_undirected(sentence, i, j, &mut |f| total += self.weights[hash_feature(f, self.hash_bits) as usize])?;
        Ok(total)
    }

    pub fn expect_mode(&self, mode: FeatureMode) -> Result<()> {
        if self.mode == mode {
            Ok(())
        } else {
            Err(Error::FeatureMode { expected: mode.name(), actual: self.mode.name() })
        }
    }
}

/// `w . fv`, counting repeated slots once per occurrence.
pub fn score(model: &Model, fv: &FeatureVector) -> f64 {
    fv.indices.iter().map(|&i| model.weights[i as usize]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence() -> Sentence {
        Sentence::from_triples(&[("The", "DT", 2), ("cat", "NN", 3), ("sat", "VBD", 0), ("down", "RP", 3)])
    }

    #[test]
    fn extraction_is_deterministic() {
        let s = sentence();
        assert_eq!(extract_directed(&s, 2, 1, 16).unwrap(), extract_directed(&s, 2, 1, 16).unwrap());
    }

    #[test]
    fn directed_features_depend_on_direction() {
        let s = sentence();
        let forward = directed_feature_strings(&s, 2, 1).unwrap();
        let backward = directed_feature_strings(&s, 1, 2).unwrap();
        assert_ne!(forward, backward);
        assert!(forward.iter().any(|f| f.ends_with("&L1")));
        assert!(backward.iter().any(|f| f.ends_with("&R1")));
    }

    #[test]
    fn undirected_features_ignore_argument_order() {
        let s = sentence();
        assert_eq!(undirected_feature_strings(&s, 3, 1).unwrap(), undirected_feature_strings(&s, 1, 3).unwrap());
        let strings = undirected_feature_strings(&s, 1, 3).unwrap();
        assert!(strings.iter().all(|f| f.starts_with("u:")));
        assert!(strings.contains(&String::from("u:ApXpBp=DT|NN|VBD&2")));
    }

    #[test]
    fn feature_count_follows_the_table() {
        let s = sentence();
        // 17 fixed templates plus one between-POS template per gap token,
        // each fired bare and conjoined.
        assert_eq!(directed_feature_strings(&s, 3, 4).unwrap().len(), 2 * 17);
        assert_eq!(directed_feature_strings(&s, 0, 4).unwrap().len(), 2 * (17 + 3));
    }

    #[test]
    fn root_and_boundary_symbols() {
        let s = sentence();
        let f = directed_feature_strings(&s, 0, 1).unwrap();
        assert!(f.contains(&String::from("d:AwAp=<root>|<root>")));
        assert!(f.contains(&String::from("d:Ap-ApBp-Bp=<s>|<root>|<root>|DT")));
        let f = directed_feature_strings(&s, 3, 4).unwrap();
        assert!(f.contains(&String::from("d:ApAp+BpBp+=VBD|RP|RP|</s>&R1")));
    }

    #[test]
    fn distance_bins() {
        let bins: Vec<&str> = [1, 2, 3, 4, 5, 6, 10, 11, 40].iter().map(|&d| distance_bin(d)).collect();
        assert_eq!(bins, ["1", "2", "3", "4", "5", "6-10", "6-10", "11+", "11+"]);
    }

    #[test]
    fn bad_indices_are_rejected() {
        let s = sentence();
        assert_eq!(extract_directed(&s, 5, 1, 16), Err(Error::TokenIndex { index: 5, n_tokens: 4 }));
        assert!(extract_directed(&s, 1, 0, 16).is_err());
        assert_eq!(extract_directed(&s, 2, 2, 16), Err(Error::SelfArc(2)));
        assert!(extract_undirected(&s, 0, 9, 16).is_err());
    }

    #[test]
    fn scores() {
        let s = sentence();
        let mut model = Model::new(FeatureMode::Directed, Combiner::Mean, 12);
        let fv = extract_directed(&s, 3, 2, 12).unwrap();
        assert_eq!(score(&model, &fv), 0.0);
        let k = fv.indices[0];
        model.weights[k as usize] = 2.5;
        let occurrences = fv.indices.iter().filter(|&&i| i == k).count() as f64;
        assert_eq!(score(&model, &fv), 2.5 * occurrences);
        assert_eq!(model.arc_score(&s, 3, 2).unwrap(), score(&model, &fv));
        assert!(model.pair_score(&s, 3, 2).is_err());
    }

    #[test]
    fn hashing_is_stable_and_bounded() {
        assert_eq!(hash_feature("d:Aw=cat", 22), hash_feature("d:Aw=cat", 22));
        for bits in [1u8, 8, 22, 32] {
            assert!((hash_feature("x", bits) as u64) < (1u64 << bits));
        }
    }
}
