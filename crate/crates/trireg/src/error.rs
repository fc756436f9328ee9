use std::io;

use thiserror::Error;

/// Errors surfaced by the command line, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: {message}")]
    Spec {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
    #[error(transparent)]
    Core(#[from] trireg_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use trireg_core::Error as E;
        match self {
            CliError::Cap(_) | CliError::Core(E::Oversize { .. }) => 3,
            CliError::Core(E::Internal(_)) => 1,
            _ => 2,
        }
    }
}
