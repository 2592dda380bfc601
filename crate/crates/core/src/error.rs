use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("boundary singularity: {0}")]
    Singularity(String),

    #[error("support violation: {0}")]
    Support(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("integration error: {0}")]
    Integration(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema version mismatch: expected {expected:?}, found {found:?}")]
    Schema { expected: String, found: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
