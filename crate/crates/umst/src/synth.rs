//! A small generative grammar producing English-like dependency trees.
//!
//! Sentences are clauses with a subject, a verb, an optional object,
//! prepositional phrases, adverbs, relative clauses and coordination, with
//! Penn-style tags. Prepositional phrases attach either to the verb or to
//! the preceding noun according to fixed lexical affinities, with some
//! label noise, so attachment is learnable from word pairs but not from
//! tags alone. Everything is drawn from a seeded generator.

use umst_core::{RandomSource, Sentence, Token};

const DETERMINERS: &[&str] = &["the", "a", "this", "every", "some", "that", "each", "no"];
const ADJECTIVES: &[&str] = &[
    "old", "red", "quiet", "large", "small", "happy", "strange", "green", "bright", "tired", "clever", "heavy",
    "young", "cold", "famous",
];
const NOUNS: &[&str] = &[
    "man",
    "woman",
    "dog",
    "cat",
    "telescope",
    "hill",
    "park",
    "garden",
    "knife",
    "book",
    "letter",
    "teacher",
    "student",
    "table",
    "window",
    "river",
    "city",
    "car",
    "bridge",
    "song",
    "friend",
    "doctor",
    "box",
    "key",
    "door",
    "lamp",
    "market",
    "farmer",
    "horse",
    "boat",
    "painting",
    "child",
    "house",
    "road",
    "tree",
    "bottle",
    "report",
    "machine",
    "garage",
    "forest",
];
const PRONOUNS: &[&str] = &["she", "he", "they", "we", "it"];
const TRANSITIVE: &[&str] = &[
    "saw", "found", "opened", "painted", "bought", "carried", "watched", "wrote", "fixed", "sold", "visited",
    "cleaned", "built", "read", "moved", "took",
];
const INTRANSITIVE: &[&str] = &["slept", "walked", "arrived", "waited", "laughed", "ran", "stayed", "sang"];
const PREPOSITIONS: &[&str] = &["with", "in", "on", "near", "from", "under", "behind", "for"];
const ADVERBS: &[&str] = &["quickly", "slowly", "yesterday", "often", "never", "carefully", "again", "finally"];

/// How strongly a preposition is drawn to a given verb or noun (0..=2).
struct Affinities {
    noun: Vec<Vec<u8>>,
    verb: Vec<Vec<u8>>,
}

impl Affinities {
    fn new(rng: &mut RandomSource) -> Self {
        let mut table =
            |rows: usize| (0..PREPOSITIONS.len()).map(|_| (0..rows).map(|_| rng.below(3) as u8).collect()).collect();
        Affinities { noun: table(NOUNS.len()), verb: table(TRANSITIVE.len() + INTRANSITIVE.len()) }
    }
}

/// Settings of the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrammarConfig {
    /// Probability that a prepositional phrase ignores the affinities.
    pub attachment_noise: f64,
    pub max_tokens: usize,
}

impl Default for GrammarConfig {
    fn default() -> Self {
        GrammarConfig { attachment_noise: 0.1, max_tokens: 40 }
    }
}

struct Builder<'a> {
    rng: &'a mut RandomSource,
    affinities: &'a Affinities,
    config: GrammarConfig,
    forms: Vec<String>,
    tags: Vec<&'static str>,
    heads: Vec<usize>,
}

impl Builder<'_> {
    /// Appends a token with an unset head and returns its 1-based position.
    fn push(&mut self, form: &str, tag: &'static str) -> usize {
        self.forms.push(form.into());
        self.tags.push(tag);
        self.heads.push(0);
        self.forms.len()
    }

    fn attach(&mut self, dependent: usize, head: usize) {
        self.heads[dependent - 1] = head;
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.unit() < p
    }

    fn pick(&mut self, words: &[&'static str]) -> (usize, &'static str) {
        let k = self.rng.below(words.len() as u64) as usize;
        (k, words[k])
    }

    fn room(&self, needed: usize) -> bool {
        self.forms.len() + needed <= self.config.max_tokens
    }

    /// Noun phrase; returns (head position, noun index or None for a pronoun).
    fn noun_phrase(&mut self, subject: bool, depth: usize) -> (usize, Option<usize>) {
        if subject && self.chance(0.2) {
            let (_, p) = self.pick(PRONOUNS);
            return (self.push(p, "PRP"), None);
        }
        let mut dependents = Vec::new();
        if self.chance(0.85) {
            let (_, d) = self.pick(DETERMINERS);
            dependents.push(self.push(d, "DT"));
        }
        while dependents.len() < 3 && self.chance(0.3) {
            let (_, a) = self.pick(ADJECTIVES);
            dependents.push(self.push(a, "JJ"));
        }
        let (k, noun) = self.pick(NOUNS);
        let plural = self.chance(0.2);
        let head = if plural { self.push(&format!("{noun}s"), "NNS") } else { self.push(noun, "NN") };
        for d in dependents {
            self.attach(d, head);
        }
        if depth == 0 && self.room(6) && self.chance(0.08) {
            // Relative clause: "that" attaches to its verb, the verb to the noun.
            let that = self.push("that", "WDT");
            let (_, v) = self.pick(TRANSITIVE);
            let verb = self.push(v, "VBD");
            self.attach(that, verb);
            self.attach(verb, head);
            let (object, _) = self.noun_phrase(false, depth + 1);
            self.attach(object, verb);
        }
        (head, Some(k))
    }

    fn prepositional_phrase(&mut self, verb: (usize, usize), noun: Option<(usize, usize)>) {
        let (p, prep) = self.pick(PREPOSITIONS);
        let pp = self.push(prep, "IN");
        let (object, _) = self.noun_phrase(false, 1);
        self.attach(object, pp);
        let head = match noun {
            Some((pos, n)) => {
                let to_noun = self.affinities.noun[p][n] > self.affinities.verb[p][verb.1];
                let flip = self.chance(self.config.attachment_noise);
                if to_noun != flip {
                    pos
                } else {
                    verb.0
                }
            }
            None => verb.0,
        };
        self.attach(pp, head);
    }

    /// One clause; returns the verb position.
    fn clause(&mut self, allow_coordination: bool) -> usize {
        let mut pre_verb = Vec::new();
        if self.chance(0.1) {
            let (_, a) = self.pick(ADVERBS);
            pre_verb.push(self.push(a, "RB"));
            if self.chance(0.5) {
                pre_verb.push(self.push(",", ","));
            }
        }
        let (subject, _) = self.noun_phrase(true, 0);
        pre_verb.push(subject);
        if self.chance(0.08) {
            let (_, a) = self.pick(ADVERBS);
            pre_verb.push(self.push(a, "RB"));
        }
        let transitive = self.chance(0.75);
        let (v, form) = if transitive {
            self.pick(TRANSITIVE)
        } else {
            let (k, f) = self.pick(INTRANSITIVE);
            (TRANSITIVE.len() + k, f)
        };
        let verb = self.push(form, "VBD");
        for d in pre_verb {
            self.attach(d, verb);
        }
        let mut last_noun = None;
        if transitive {
            let (object, noun) = self.noun_phrase(false, 0);
            self.attach(object, verb);
            last_noun = noun.map(|n| (object, n));
        }
        let mut pps = 0;
        while pps < 3 && self.room(5) && self.chance(if pps == 0 { 0.6 } else { 0.3 }) {
            self.prepositional_phrase((verb, v), last_noun);
            pps += 1;
        }
        if self.chance(0.15) {
            let (_, a) = self.pick(ADVERBS);
            let adv = self.push(a, "RB");
            self.attach(adv, verb);
        }
        if allow_coordination && self.room(8) && self.chance(0.12) {
            let cc = self.push("and", "CC");
            self.attach(cc, verb);
            let second = self.clause(false);
            self.attach(second, verb);
        }
        verb
    }
}

/// Generates `n_sentences` sentences from `seed`. The lexical affinities
/// depend only on `grammar_seed`, so different corpora drawn with the same
/// grammar seed share one grammar.
pub fn generate_treebank(n_sentences: usize, grammar_seed: u64, seed: u64, config: GrammarConfig) -> Vec<Sentence> {
    let affinities = Affinities::new(&mut RandomSource::new(grammar_seed));
    (0..n_sentences)
        .map(|i| {
            let mut rng = RandomSource::for_item(seed, i as u64);
            let mut b = Builder {
                rng: &mut rng,
                affinities: &affinities,
                config,
                forms: Vec::new(),
                tags: Vec::new(),
                heads: Vec::new(),
            };
            let root = b.clause(true);
            b.attach(root, 0);
            let period = b.push(".", ".");
            b.attach(period, root);
            let mut s = Sentence::default();
            for ((form, tag), head) in b.forms.iter().zip(&b.tags).zip(&b.heads) {
                let mut t = Token::new(form, tag);
                t.lemma = form.to_lowercase();
                t.cpostag = tag.chars().take(2).collect();
                s.tokens.push(t);
                s.gold_heads.push(*head);
                s.gold_labels.push("_".into());
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_are_valid_and_reproducible() {
        let a = generate_treebank(200, 1, 2, GrammarConfig::default());
        assert_eq!(a, generate_treebank(200, 1, 2, GrammarConfig::default()));
        for s in &a {
            assert!(s.has_valid_gold_tree(), "{s:?}");
            assert!(s.len() >= 3 && s.len() <= GrammarConfig::default().max_tokens + 8);
        }
        assert_ne!(a, generate_treebank(200, 1, 3, GrammarConfig::default()));
    }
}
