use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] biodilate::Error),
    #[error("{failed} property check(s) failed")]
    PropertyFailure { failed: usize },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Self::Parse(msg.into())
    }

    pub fn json(e: serde_json::Error) -> Self {
        Self::Parse(e.to_string())
    }

    /// 1 for unreadable or malformed input, 2 for failed property checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::PropertyFailure { .. } => 2,
            _ => 1,
        }
    }
}
