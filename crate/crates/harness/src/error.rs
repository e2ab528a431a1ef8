use std::io;
use std::path::PathBuf;

use firefly_core::FaError;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("malformed config: {0}")]
    Syntax(String),

    #[error("missing required key `{0}`")]
    MissingKey(&'static str),

    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error("key `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },

    #[error("run with seed {seed} failed: {source}")]
    Run {
        seed: u64,
        #[source]
        source: FaError,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("cannot compare experiments: {0}")]
    Mismatch(String),

    #[error("serializing summary: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub(crate) fn invalid(key: impl Into<String>, reason: impl Into<String>) -> Self {
        HarnessError::InvalidValue {
            key: key.into(),
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// Config key whose value caused this error, if any.
    pub fn key(&self) -> Option<&str> {
        match self {
            HarnessError::MissingKey(k) => Some(k),
            HarnessError::UnknownKey(k) => Some(k),
            HarnessError::InvalidValue { key, .. } => Some(key),
            _ => None,
        }
    }
}
