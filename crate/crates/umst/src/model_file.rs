//! Line-based model files.
//!
//! ```text
//! umst-model 1
//! system u-mst-uf
//! mode undirected
//! combiner mean
//! hash_bits 22
//! weights 2
//! 17 0.5
//! 4093 -1.25
//! pruner 1
//! NN	VB	left	3
//! end
//! ```
//!
//! Only non-zero weights are stored, in slot order. Values use Rust's
//! shortest round-trip float formatting, so reading a file back gives
//! bit-identical weights. Pruner lines are tab-separated because tags may
//! contain spaces.

#![allow(clippy::tabs_in_doc_comments)]

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use umst_core::features::{FeatureMode, Model};
use umst_core::inference::{ArcDirection, Combiner, Pruner, System};
use umst_core::training::TrainedModel;

use crate::error::{at, Error, Result};

const MAGIC: &str = "umst-model";
const VERSION: u32 = 1;

pub fn write_model<W: Write>(mut w: W, trained: &TrainedModel) -> Result<()> {
    let model = &trained.model;
    writeln!(w, "{MAGIC} {VERSION}")?;
    writeln!(w, "system {}", trained.system)?;
    writeln!(w, "mode {}", model.mode.name())?;
    writeln!(w, "combiner {}", model.combiner)?;
    writeln!(w, "hash_bits {}", model.hash_bits)?;
    let nonzero: Vec<(usize, f64)> =
        model.weights.iter().enumerate().filter(|(_, &v)| v != 0.0).map(|(i, &v)| (i, v)).collect();
    writeln!(w, "weights {}", nonzero.len())?;
    for (slot, value) in nonzero {
        writeln!(w, "{slot} {value}")?;
    }
    match &trained.pruner {
        None => writeln!(w, "pruner none")?,
        Some(p) => {
            let entries: Vec<_> = p.entries().collect();
            writeln!(w, "pruner {}", entries.len())?;
            for (head, m, dir, len) in entries {
                writeln!(w, "{head}\t{m}\t{}\t{len}", direction_name(dir))?;
            }
        }
    }
    writeln!(w, "end")?;
    w.flush()?;
    Ok(())
}

fn direction_name(dir: ArcDirection) -> &'static str {
    match dir {
        ArcDirection::Left => "left",
        ArcDirection::Right => "right",
    }
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn next(&mut self) -> Result<String> {
        self.number += 1;
        match self.inner.next() {
            Some(line) => Ok(line?),
            None => Err(self.error("unexpected end of file")),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::ModelFormat { line: self.number, message: message.into() }
    }

    /// Reads a `key value` line.
    fn field(&mut self, key: &str) -> Result<String> {
        let line = self.next()?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.to_string()),
            _ => Err(self.error(format!("expected `{key} <value>`, found {line:?}"))),
        }
    }

    fn parse<T: std::str::FromStr>(&self, text: &str, what: &str) -> Result<T> {
        text.parse().map_err(|_| self.error(format!("invalid {what} {text:?}")))
    }
}

pub fn read_model<R: BufRead>(reader: R) -> Result<TrainedModel> {
    let mut lines = Lines { inner: reader.lines(), number: 0 };
    let header = lines.next()?;
    if header != format!("{MAGIC} {VERSION}") {
        return Err(lines.error(format!("expected header `{MAGIC} {VERSION}`, found {header:?}")));
    }
    let system: System = {
        let v = lines.field("system")?;
        lines.parse(&v, "system")?
    };
    let mode = {
        let v = lines.field("mode")?;
        FeatureMode::from_name(&v).ok_or_else(|| lines.error(format!("invalid mode {v:?}")))?
    };
    let combiner: Combiner = {
        let v = lines.field("combiner")?;
        lines.parse(&v, "combiner")?
    };
    let hash_bits: u8 = {
        let v = lines.field("hash_bits")?;
        lines.parse(&v, "hash_bits")?
    };
    if !(1..=32).contains(&hash_bits) {
        return Err(lines.error(format!("hash_bits {hash_bits} outside 1..=32")));
    }
    if mode != system.feature_mode() {
        return Err(lines.error(format!("system {system} does not use {} features", mode.name())));
    }

    let mut model = Model::new(mode, combiner, hash_bits);
    let count: usize = {
        let v = lines.field("weights")?;
        lines.parse(&v, "weight count")?
    };
    for _ in 0..count {
        let line = lines.next()?;
        let (slot, value) =
            line.split_once(' ').ok_or_else(|| lines.error(format!("expected `<slot> <value>`, found {line:?}")))?;
        let slot: usize = lines.parse(slot, "slot")?;
        let value: f64 = lines.parse(value, "weight")?;
        if slot >= model.weights.len() || !value.is_finite() {
            return Err(lines.error(format!("weight {line:?} out of range")));
        }
        model.weights[slot] = value;
    }

    let pruner = match lines.field("pruner")?.as_str() {
        "none" => None,
        v => {
            let count: usize = lines.parse(v, "pruner entry count")?;
            let mut pruner = Pruner::new();
            for _ in 0..count {
                let line = lines.next()?;
                let cols: Vec<&str> = line.split('\t').collect();
                let [head, m, dir, len] = cols[..] else {
                    return Err(lines.error(format!("expected 4 tab-separated pruner fields, found {line:?}")));
                };
                let dir = match dir {
                    "left" => ArcDirection::Left,
                    "right" => ArcDirection::Right,
                    _ => return Err(lines.error(format!("invalid direction {dir:?}"))),
                };
                let len: usize = lines.parse(len, "length")?;
                if len == 0 {
                    return Err(lines.error("pruner lengths start at 1"));
                }
                pruner.observe(head, m, dir, len);
            }
            Some(pruner)
        }
    };
    if lines.next()? != "end" {
        return Err(lines.error("expected `end`"));
    }
    Ok(TrainedModel { system, model, pruner })
}

pub fn write_model_file(path: &Path, trained: &TrainedModel) -> Result<()> {
    let file = File::create(path).map_err(at(path))?;
    write_model(BufWriter::new(file), trained)
}

pub fn read_model_file(path: &Path) -> Result<TrainedModel> {
    let file = File::open(path).map_err(at(path))?;
    read_model(BufReader::new(file))
}
