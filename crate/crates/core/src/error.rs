use alloc::string::String;

use crate::graph::EdgeId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("edge index {index} out of range for a graph with {n_edges} edges")]
    EdgeIndex { index: usize, n_edges: usize },

    #[error("edge endpoint {vertex} out of range for a graph with {n_vertices} vertices")]
    VertexIndex { vertex: usize, n_vertices: usize },

    #[error("forest edge {0} is not an edge of the graph")]
    ForestEdgeNotInGraph(EdgeId),

    #[error("edge set does not span the graph: vertex {0} is unreachable from the root")]
    NotSpanning(usize),

    #[error("invalid dependency tree: {0}")]
    InvalidTree(String),

    #[error("token index {index} out of range for a sentence of {n_tokens} tokens")]
    TokenIndex { index: usize, n_tokens: usize },

    #[error("an arc cannot attach token {0} to itself")]
    SelfArc(usize),

    #[error("the training corpus is empty")]
    EmptyCorpus,

    #[error("length mismatch for {what}: expected {expected}, got {actual}")]
    LengthMismatch { what: &'static str, expected: usize, actual: usize },

    #[error("expected a model with {expected} features, got {actual}")]
    FeatureMode { expected: &'static str, actual: &'static str },

    #[error("system {0} needs a trained d-mst model for its enhancement scores")]
    MissingDirectedModel(&'static str),

    #[error("invalid configuration: {0}")]
    Config(String),
}
