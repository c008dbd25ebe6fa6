use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Domain(String),

    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },

    #[error("solver did not converge: {message}")]
    NonConvergence { message: String, trace: Vec<f64> },

    #[error("output: {0}")]
    Io(#[from] std::io::Error),

    #[error("output: {0}")]
    Csv(#[from] csv::Error),

    #[error("output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::ChecksFailed { .. } => ExitCode::from(1),
            CliError::NonConvergence { .. } => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}
