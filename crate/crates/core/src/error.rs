use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameters, names, dimensions or CR resolution. Raised before
    /// any computation starts.
    #[error("configuration error: {0}")]
    Config(String),

    /// A metric was asked for something it cannot answer, e.g. the mean of
    /// zero records.
    #[error("usage error: {0}")]
    Usage(String),

    /// The store does not hold every cell the plan requires.
    #[error("incomplete store: {} missing cell(s): {}", .missing.len(), .missing.join(", "))]
    Incomplete { missing: Vec<String> },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
