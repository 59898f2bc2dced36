//! Failures of a command, each tied to one process exit code.

use std::path::PathBuf;

use flatspin_core::{BuildError, LoadError, QuotientError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid parameters: {0}")]
    Build(#[from] BuildError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed surface JSON in {path}: {source}")]
    Malformed { path: String, source: serde_json::Error },
    #[error("invalid surface data in {path}: {detail}")]
    InvalidSurface { path: String, detail: String },
    #[error("cannot build the cell complex: {0}")]
    Complex(#[from] QuotientError),
}

impl CliError {
    /// 2 for usage problems, 3 for surface data that fails validation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidSurface { .. } | CliError::Complex(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn load(path: &str, err: LoadError) -> CliError {
        match err {
            LoadError::Malformed(source) => CliError::Malformed { path: path.to_owned(), source },
            LoadError::Invalid(e) => CliError::InvalidSurface { path: path.to_owned(), detail: format!("{e:?}: {e}") },
            other => CliError::InvalidSurface { path: path.to_owned(), detail: other.to_string() },
        }
    }
}
