//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error in {path} (line {line}): {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("mesh is not manifold: {0} mesh edge(s) shared by more than two faces")]
    NonManifold(usize),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("label {label} out of range (label count {count})")]
    LabelOutOfRange { label: usize, count: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 1 validation, 2 i/o or parse, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse { .. } | Error::Checkpoint(_) => 2,
            Error::Numerical(_) => 3,
            _ => 1,
        }
    }
}
