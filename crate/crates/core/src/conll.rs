//! Sentence and dependency tree data model shared by the whole pipeline.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use unicode_general_category::{get_general_category, GeneralCategory};

use crate::error::{Error, Result};

/// One CoNLL-X token line minus its ID, HEAD and DEPREL columns, which live
/// on [`Sentence`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Token {
    pub form: String,
    pub lemma: String,
    pub cpostag: String,
    pub postag: String,
    pub feats: String,
    pub phead: String,
    pub pdeprel: String,
    /// Columns past the tenth, kept verbatim.
    pub extra: Vec<String>,
}

impl Token {
    /// Token with the given form and part of speech; every other column is `_`.
    pub fn new(form: &str, postag: &str) -> Self {
        let blank = || String::from("_");
        Token {
            form: form.into(),
            lemma: blank(),
            cpostag: postag.into(),
            postag: postag.into(),
            feats: blank(),
            phead: blank(),
            pdeprel: blank(),
            extra: Vec::new(),
        }
    }
}

/// True when every character of the form is Unicode punctuation (general
/// category P*), the CoNLL shared-task rule for excluding tokens from
/// attachment scores.
pub fn is_punctuation(token: &Token) -> bool {
    !token.form.is_empty()
        && token.form.chars().all(|c| {
            matches!(
                get_general_category(c),
                GeneralCategory::ConnectorPunctuation
                    | GeneralCategory::DashPunctuation
                    | GeneralCategory::OpenPunctuation
                    | GeneralCategory::ClosePunctuation
                    | GeneralCategory::InitialPunctuation
                    | GeneralCategory::FinalPunctuation
                    | GeneralCategory::OtherPunctuation
            )
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    /// Gold head of token `i + 1`; 0 is the artificial root.
    pub gold_heads: Vec<usize>,
    pub gold_labels: Vec<String>,
}

impl Sentence {
    /// Builds a sentence from (form, tag, head) triples with `_` labels.
    pub fn from_triples(triples: &[(&str, &str, usize)]) -> Self {
        Sentence {
            tokens: triples.iter().map(|&(f, p, _)| Token::new(f, p)).collect(),
            gold_heads: triples.iter().map(|&(_, _, h)| h).collect(),
            gold_labels: vec![String::from("_"); triples.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token at 1-based position `i`; `None` for the root and out of range.
    pub fn token(&self, i: usize) -> Option<&Token> {
        i.checked_sub(1).and_then(|k| self.tokens.get(k))
    }

    pub fn gold_tree(&self) -> DependencyTree {
        DependencyTree::new(self.gold_heads.clone())
    }

    pub fn has_valid_gold_tree(&self) -> bool {
        self.gold_heads.len() == self.tokens.len() && self.gold_tree().validate().is_ok()
    }
}

/// Head of every token of a sentence (0 = root). Trees built by the
/// parsers may be non-projective.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DependencyTree {
    pub heads: Vec<usize>,
}

impl DependencyTree {
    pub fn new(heads: Vec<usize>) -> Self {
        DependencyTree { heads }
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    /// Head of 1-based token `m`.
    pub fn head(&self, m: usize) -> usize {
        self.heads[m - 1]
    }

    /// Checks that every head is in range, no token heads itself and every
    /// token reaches the root.
    pub fn validate(&self) -> Result<()> {
        let n = self.heads.len();
        for (k, &h) in self.heads.iter().enumerate() {
            if h > n {
                return Err(Error::InvalidTree(format!("token {} has head {h} beyond the sentence length {n}", k + 1)));
            }
            if h == k + 1 {
                return Err(Error::InvalidTree(format!("token {h} heads itself")));
            }
        }
        // 0 = unvisited, 1 = on current walk, 2 = reaches the root.
        let mut state = vec![0u8; n + 1];
        state[0] = 2;
        let mut walk = Vec::new();
        for start in 1..=n {
            let mut x = start;
            while state[x] == 0 {
                state[x] = 1;
                walk.push(x);
                x = self.heads[x - 1];
            }
            if state[x] == 1 {
                return Err(Error::InvalidTree(format!("cycle through token {x}")));
            }
            for y in walk.drain(..) {
                state[y] = 2;
            }
        }
        Ok(())
    }

    /// Unordered (smaller, larger) vertex pairs of the tree's arcs, sorted.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> =
            self.heads.iter().enumerate().map(|(k, &h)| (h.min(k + 1), h.max(k + 1))).collect();
        edges.sort_unstable();
        edges
    }

    /// Children of every vertex 0..=n, in increasing order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.heads.len() + 1];
        for (k, &h) in self.heads.iter().enumerate() {
            children[h].push(k + 1);
        }
        children
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctuation() {
        assert!(is_punctuation(&Token::new(",", "P")));
        assert!(is_punctuation(&Token::new("--", "P")));
        assert!(is_punctuation(&Token::new("«", "P")));
        assert!(is_punctuation(&Token::new("…", "P")));
        assert!(!is_punctuation(&Token::new("word", "N")));
        assert!(!is_punctuation(&Token::new("$", "SYM")));
        assert!(!is_punctuation(&Token::new("a,", "X")));
        assert!(!is_punctuation(&Token::new("", "X")));
    }

    #[test]
    fn tree_validation() {
        assert!(DependencyTree::new(vec![2, 0]).validate().is_ok());
        assert!(DependencyTree::new(vec![0]).validate().is_ok());
        assert!(DependencyTree::new(vec![]).validate().is_ok());
        assert!(DependencyTree::new(vec![2, 1]).validate().is_err());
        assert!(DependencyTree::new(vec![1]).validate().is_err());
        assert!(DependencyTree::new(vec![3, 0]).validate().is_err());
        assert!(DependencyTree::new(vec![0, 3, 2]).validate().is_err());
        // Multiple root attachments are allowed.
        assert!(DependencyTree::new(vec![0, 0, 2]).validate().is_ok());
    }

    #[test]
    fn undirected_edges_ignore_direction() {
        let a = DependencyTree::new(vec![2, 0]);
        assert_eq!(a.undirected_edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(a.children(), vec![vec![2], vec![], vec![1]]);
    }

    #[test]
    fn sentence_accessors() {
        let s = Sentence::from_triples(&[("John", "NNP", 2), ("sleeps", "VBZ", 0)]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.token(1).unwrap().form, "John");
        assert!(s.token(0).is_none());
        assert!(s.has_valid_gold_tree());
    }
}
