use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`: {message}")]
    Config { field: &'static str, message: String },

    #[error("model error: {0}")]
    Model(#[from] spinfringe::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("verification failed: {failed} of {total} laws exceeded their tolerance")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub fn config(field: &'static str, message: impl Into<String>) -> Self {
        CliError::Config { field, message: message.into() }
    }

    /// Process exit status: 1 verification failure, 2 configuration, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Config { .. } | CliError::Model(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}
