//! Length-dictionary pruning.

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::conll::Sentence;

/// Which side of its head a modifier sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcDirection {
    Left,
    Right,
}

impl ArcDirection {
    pub fn of(head: usize, m: usize) -> Self {
        if m < head {
            ArcDirection::Left
        } else {
            ArcDirection::Right
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

/// Longest attachment seen in training for each (head tag, modifier tag,
/// direction). Arcs out of the root are never pruned.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pruner {
    // head tag -> modifier tag -> [left, right]; 0 means never observed.
    max_len: BTreeMap<String, BTreeMap<String, [u32; 2]>>,
}

impl Pruner {
    pub fn new() -> Self {
        Pruner::default()
    }

    /// Records every gold arc of the corpus. Root arcs are recorded as well,
    /// though [`Pruner::allows`] never consults them.
    pub fn build(corpus: &[Sentence]) -> Self {
        let mut pruner = Pruner::new();
        for sentence in corpus {
            for (k, &h) in sentence.gold_heads.iter().enumerate() {
                let m = k + 1;
                if h > sentence.len() || h == m {
                    continue;
                }
                let dir = ArcDirection::of(h, m);
                pruner.observe(tag(sentence, h), tag(sentence, m), dir, h.abs_diff(m));
            }
        }
        pruner
    }

    pub fn observe(&mut self, head_tag: &str, mod_tag: &str, dir: ArcDirection, length: usize) {
        let entry = self.max_len.entry(head_tag.into()).or_default().entry(mod_tag.into()).or_default();
        entry[dir.slot()] = entry[dir.slot()].max(length as u32);
    }

    pub fn max_len(&self, head_tag: &str, mod_tag: &str, dir: ArcDirection) -> Option<usize> {
        let len = self.max_len.get(head_tag)?.get(mod_tag)?[dir.slot()];
        (len > 0).then_some(len as usize)
    }

    /// Whether the directed arc `head -> m` survives pruning.
    pub fn allows(&self, sentence: &Sentence, head: usize, m: usize) -> bool {
        if head == 0 {
            return true;
        }
        match self.max_len(tag(sentence, head), tag(sentence, m), ArcDirection::of(head, m)) {
            Some(max) => head.abs_diff(m) <= max,
            None => false,
        }
    }

    /// An undirected pair is pruned only when both of its arcs are.
    pub fn keeps_pair(&self, sentence: &Sentence, i: usize, j: usize) -> bool {
        (j != 0 && self.allows(sentence, i, j)) || (i != 0 && self.allows(sentence, j, i))
    }

    /// All entries as (head tag, modifier tag, direction, max length).
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str, ArcDirection, usize)> + '_ {
        self.max_len.iter().flat_map(|(h, inner)| {
            inner.iter().flat_map(move |(m, lens)| {
                [ArcDirection::Left, ArcDirection::Right]
                    .into_iter()
                    .filter(move |d| lens[d.slot()] > 0)
                    .map(move |d| (h.as_str(), m.as_str(), d, lens[d.slot()] as usize))
            })
        })
    }

    pub fn is_empty(&self) -> bool {
        self.max_len.is_empty()
    }
}

pub fn build_pruner(corpus: &[Sentence]) -> Pruner {
    Pruner::build(corpus)
}

pub(crate) fn tag(sentence: &Sentence, i: usize) -> &str {
    match sentence.token(i) {
        Some(t) => &t.postag,
        None => "<root>",
    }
}
