use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Input file or value rejected; `path` locates the offending field.
    #[error("{path}: {message}")]
    Validation { path: String, message: String },

    #[error("cannot access {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("numerical inconsistency: {0}")]
    Numeric(tempocorr::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } | CliError::Io { .. } => 2,
            CliError::Numeric(_) => 3,
        }
    }

    /// Classifies a core error raised while evaluating an already validated scenario.
    pub fn from_evaluation(context: &str, err: tempocorr::Error) -> Self {
        use tempocorr::Error as E;
        match err {
            E::Inconsistent { .. } | E::NegativeProbability(_) | E::NoConvergence { .. } | E::ResidualImaginary(_) => {
                CliError::Numeric(err)
            }
            other => CliError::Validation { path: context.to_string(), message: other.to_string() },
        }
    }
}
