//! Writes the synthetic treebank used by the acceptance suite:
//!
//! ```text
//! cargo run -p umst --example gen_fixture -- crates/umst/tests/fixtures
//! ```

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use umst::conll::write_gold_conll;
use umst::synth::{generate_treebank, GrammarConfig};

const GRAMMAR_SEED: u64 = 20;
const TRAIN_SENTENCES: usize = 600;
const TEST_SENTENCES: usize = 200;

fn main() -> umst::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/umst/tests/fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let config = GrammarConfig::default();
    for (name, n, seed) in [("train.conll", TRAIN_SENTENCES, 1), ("test.conll", TEST_SENTENCES, 2)] {
        let corpus = generate_treebank(n, GRAMMAR_SEED, seed, config);
        write_gold_conll(BufWriter::new(File::create(dir.join(name))?), &corpus)?;
    }
    Ok(())
}
