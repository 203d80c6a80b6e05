use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: parse error at line {line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("invalid `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("optimizer failed: {0}")]
    Optimizer(#[source] antsynth_core::Error),
    #[error("{0}")]
    Serialize(String),
}

impl HarnessError {
    pub(crate) fn invalid(key: &str, message: impl Into<String>) -> Self {
        Self::Invalid { key: key.to_string(), message: message.into() }
    }

    /// Process exit status: 2 for configuration problems, 3 for failures
    /// while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse { .. } | Self::Invalid { .. } | Self::Read { .. } => 2,
            Self::Write { .. } | Self::Optimizer(_) | Self::Serialize(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
