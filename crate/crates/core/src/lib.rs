//! Edge-linear first-order dependency parsing.
//!
//! The crate is split into an undirected minimum spanning forest engine
//! ([`graph`], [`mst`]) and an arc-factored parsing pipeline built on top of
//! it ([`features`], [`inference`], [`training`], [`eval`]). Everything here
//! is `no_std` with `alloc`; file formats and the command line live in the
//! `umst` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod conll;
pub mod error;
pub mod eval;
pub mod features;
pub mod graph;
pub mod inference;
pub mod mst;
pub mod training;
pub mod union_find;

pub use conll::{DependencyTree, Sentence, Token};
pub use error::{Error, Result};
pub use graph::{EdgeId, UndirectedEdge, UndirectedGraph};
pub use mst::{RandomSource, SpanningForest};
