use std::path::PathBuf;

use thiserror::Error;

/// CLI-layer failures; all of them exit with status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot parse {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("invalid code definition: {0}")]
    Definition(String),

    #[error("invalid gate specification: {0}")]
    Gate(String),

    #[error(transparent)]
    Core(#[from] transversal_core::Error),
}

pub type CliResult<T> = Result<T, CliError>;
