//! File formats, corpus-level pipeline and command line for the
//! `umst-core` parsing library.

pub mod bench;
pub mod cli;
pub mod config;
pub mod conll;
pub mod error;
pub mod graph_dump;
pub mod model_file;
pub mod pipeline;
pub mod report;
pub mod synth;

pub use error::{Error, Result};
