//! CoNLL-X reading and writing.
//!
//! Token lines have ten tab-separated columns: ID, FORM, LEMMA, CPOSTAG,
//! POSTAG, FEATS, HEAD, DEPREL, PHEAD, PDEPREL. Eight columns are accepted
//! on input (PHEAD and PDEPREL then read as `_`), and columns past the
//! tenth are carried through verbatim. Output always has at least ten.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use umst_core::{DependencyTree, Sentence, Token};

use crate::error::{at, Error, Result};

/// A sentence whose gold heads do not form a tree. It is still returned by
/// the reader.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    /// 0-based position of the sentence in the file.
    pub sentence: usize,
    /// Line of the sentence's first token.
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sentence {} (line {}): {}", self.sentence + 1, self.line, self.message)
    }
}

pub fn read_conll<R: BufRead>(reader: R) -> Result<Vec<Sentence>> {
    Ok(read_conll_with_warnings(reader)?.0)
}

pub fn read_conll_with_warnings<R: BufRead>(reader: R) -> Result<(Vec<Sentence>, Vec<Warning>)> {
    let mut sentences = Vec::new();
    let mut warnings = Vec::new();
    let mut block = Block::default();
    for (k, line) in reader.lines().enumerate() {
        let number = k + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        let line = if number == 1 { line.trim_start_matches('\u{feff}') } else { line };
        if line.trim().is_empty() {
            block.finish(&mut sentences, &mut warnings)?;
            continue;
        }
        block.push(line, number)?;
    }
    block.finish(&mut sentences, &mut warnings)?;
    Ok((sentences, warnings))
}

#[derive(Default)]
struct Block {
    sentence: Sentence,
    lines: Vec<usize>,
}

impl Block {
    fn push(&mut self, line: &str, number: usize) -> Result<()> {
        let bad = |message: String| Error::Conll { line: number, message };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 8 {
            return Err(bad(format!("expected at least 8 tab-separated columns, found {}", cols.len())));
        }
        let expected = self.sentence.len() + 1;
        match cols[0].parse::<usize>() {
            Ok(id) if id == expected => {}
            _ => return Err(bad(format!("expected token ID {expected}, found {:?}", cols[0]))),
        }
        if cols[1].is_empty() {
            return Err(bad("empty FORM".into()));
        }
        let head =
            cols[6].parse::<usize>().map_err(|_| bad(format!("HEAD {:?} is not a non-negative integer", cols[6])))?;
        let column = |i: usize| cols.get(i).copied().unwrap_or("_").to_string();
        self.sentence.tokens.push(Token {
            form: cols[1].into(),
            lemma: cols[2].into(),
            cpostag: cols[3].into(),
            postag: cols[4].into(),
            feats: cols[5].into(),
            phead: column(8),
            pdeprel: column(9),
            extra: cols.iter().skip(10).map(|c| c.to_string()).collect(),
        });
        self.sentence.gold_heads.push(head);
        self.sentence.gold_labels.push(cols[7].into());
        self.lines.push(number);
        Ok(())
    }

    fn finish(&mut self, sentences: &mut Vec<Sentence>, warnings: &mut Vec<Warning>) -> Result<()> {
        if self.lines.is_empty() {
            return Ok(());
        }
        let sentence = std::mem::take(&mut self.sentence);
        let lines = std::mem::take(&mut self.lines);
        let n = sentence.len();
        for (k, &h) in sentence.gold_heads.iter().enumerate() {
            if h > n {
                return Err(Error::Conll {
                    line: lines[k],
                    message: format!("HEAD {h} is outside the sentence (1..={n} or 0)"),
                });
            }
        }
        if let Err(e) = sentence.gold_tree().validate() {
            warnings.push(Warning { sentence: sentences.len(), line: lines[0], message: e.to_string() });
        }
        sentences.push(sentence);
        Ok(())
    }
}

/// Writes `sentences` with the HEAD column taken from `predicted`. All other
/// columns are written as read.
pub fn write_conll<W: Write>(writer: W, sentences: &[Sentence], predicted: &[DependencyTree]) -> Result<()> {
    if sentences.len() != predicted.len() {
        return Err(umst_core::Error::LengthMismatch {
            what: "predicted trees",
            expected: sentences.len(),
            actual: predicted.len(),
        }
        .into());
    }
    for (s, p) in sentences.iter().zip(predicted) {
        if p.len() != s.len() {
            return Err(umst_core::Error::LengthMismatch {
                what: "predicted heads",
                expected: s.len(),
                actual: p.len(),
            }
            .into());
        }
    }
    write_with(writer, sentences, |i, k| predicted[i].heads[k])
}

/// Writes `sentences` with their gold heads.
pub fn write_gold_conll<W: Write>(writer: W, sentences: &[Sentence]) -> Result<()> {
    write_with(writer, sentences, |i, k| sentences[i].gold_heads[k])
}

fn write_with<W: Write>(mut w: W, sentences: &[Sentence], head: impl Fn(usize, usize) -> usize) -> Result<()> {
    for (i, s) in sentences.iter().enumerate() {
        for (k, t) in s.tokens.iter().enumerate() {
            let label = s.gold_labels.get(k).map_or("_", String::as_str);
            write!(
                w,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                k + 1,
                t.form,
                t.lemma,
                t.cpostag,
                t.postag,
                t.feats,
                head(i, k),
                label,
                t.phead,
                t.pdeprel
            )?;
            for extra in &t.extra {
                write!(w, "\t{extra}")?;
            }
            writeln!(w)?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_conll_file(path: &Path) -> Result<(Vec<Sentence>, Vec<Warning>)> {
    let file = File::open(path).map_err(at(path))?;
    read_conll_with_warnings(BufReader::new(file)).map_err(|e| match e {
        Error::Io(source) => Error::File { path: path.to_path_buf(), source },
        other => other,
    })
}

pub fn write_conll_file(path: &Path, sentences: &[Sentence], predicted: &[DependencyTree]) -> Result<()> {
    let file = File::create(path).map_err(at(path))?;
    write_conll(BufWriter::new(file), sentences, predicted)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = "1\tJohn\tjohn\tN\tNNP\t_\t2\tSBJ\t_\t_\n2\truns\trun\tV\tVBZ\t_\t0\tROOT\t_\t_\n\n";

    #[test]
    fn empty_input() {
        assert!(read_conll("".as_bytes()).unwrap().is_empty());
        assert!(read_conll("\n\n".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn two_tokens() {
        let s = read_conll(TWO.as_bytes()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].gold_heads, [2, 0]);
        assert_eq!(s[0].gold_labels, ["SBJ", "ROOT"]);
        assert_eq!(s[0].tokens[1].lemma, "run");
    }

    #[test]
    fn gold_prediction_reproduces_input() {
        let s = read_conll(TWO.as_bytes()).unwrap();
        let mut out = Vec::new();
        write_conll(&mut out, &s, &[s[0].gold_tree()]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), TWO);
    }

    #[test]
    fn crlf_and_missing_final_blank_line() {
        let s = read_conll("1\ta\ta\tX\tX\t_\t0\tROOT\r\n".as_bytes()).unwrap();
        assert_eq!(s[0].gold_heads, [0]);
        assert_eq!(s[0].tokens[0].phead, "_");
    }

    #[test]
    fn single_token_output() {
        let s = vec![Sentence::from_triples(&[("Hi", "UH", 0)])];
        let mut out = Vec::new();
        write_conll(&mut out, &s, &[DependencyTree::new(vec![0])]).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "1\tHi\t_\tUH\tUH\t_\t0\t_\t_\t_\n\n");
    }

    #[test]
    fn extra_columns_survive() {
        let text = "1\ta\ta\tX\tX\t_\t0\tROOT\t_\t_\tmisc\tmore\n\n";
        let s = read_conll(text.as_bytes()).unwrap();
        assert_eq!(s[0].tokens[0].extra, ["misc", "more"]);
        let mut out = Vec::new();
        write_gold_conll(&mut out, &s).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("1\ta\ta\tX\tX\t_\t0\n", 1),
            ("1\ta\ta\tX\tX\t_\t0\tR\n3\tb\tb\tX\tX\t_\t1\tR\n", 2),
            ("1\ta\ta\tX\tX\t_\tx\tR\n", 1),
            ("\n\n1\ta\ta\tX\tX\t_\t5\tR\n", 3),
            ("1\t\ta\tX\tX\t_\t0\tR\n", 1),
        ];
        for (text, line) in cases {
            match read_conll(text.as_bytes()) {
                Err(Error::Conll { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn non_tree_gold_is_kept_with_a_warning() {
        let text = "1\ta\ta\tX\tX\t_\t2\tR\t_\t_\n2\tb\tb\tX\tX\t_\t1\tR\t_\t_\n\n";
        let (s, w) = read_conll_with_warnings(text.as_bytes()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].line, 1);
    }

    #[test]
    fn misaligned_predictions() {
        let s = read_conll(TWO.as_bytes()).unwrap();
        assert!(write_conll(Vec::new(), &s, &[]).is_err());
        assert!(write_conll(Vec::new(), &s, &[DependencyTree::new(vec![0])]).is_err());
    }
}
