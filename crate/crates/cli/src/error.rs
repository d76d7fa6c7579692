use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Elab(qmf_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(#[from] qmf_core::Error),
}

impl CliError {
    /// 2 for malformed input, 1 for failed computations or checks.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Elab(_) | CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}
