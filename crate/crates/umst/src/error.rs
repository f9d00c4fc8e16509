use std::io;
use std::path::{Path, PathBuf};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: io::Error },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("CoNLL input, line {line}: {message}")]
    Conll { line: usize, message: String },

    #[error("model file, line {line}: {message}")]
    ModelFormat { line: usize, message: String },

    #[error("graph dump, line {line}: {message}")]
    GraphFormat { line: usize, message: String },

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] umst_core::Error),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code: 1 for usage and configuration problems, 2 for bad
    /// input data, 3 when the pipeline broke one of its own invariants.
    pub fn exit_code(&self) -> i32 {
        use umst_core::Error as Core;
        match self {
            Error::Config(_) | Error::Core(Core::Config(_) | Core::MissingDirectedModel(_)) => 1,
            Error::Invariant(_)
            | Error::Core(Core::NotSpanning(_) | Core::InvalidTree(_) | Core::ForestEdgeNotInGraph(_)) => 3,
            _ => 2,
        }
    }
}

/// Attaches `path` to an I/O error.
pub fn at(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::File { path: path.to_path_buf(), source }
}
