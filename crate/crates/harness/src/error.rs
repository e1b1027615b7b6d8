use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid `{key}`: {message}")]
    Usage { key: String, message: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Simulation(#[from] vague_consensus::Error),
}

impl HarnessError {
    pub fn usage(key: &str, message: String) -> Self {
        HarnessError::Usage { key: key.to_string(), message }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    /// 2 for usage and configuration problems, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage { .. } | HarnessError::Simulation(_) => 2,
            HarnessError::Io { .. } => 3,
        }
    }
}
