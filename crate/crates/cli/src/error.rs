use std::io;

use thiserror::Error;

/// Everything that ends a command early, with its exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(helmholtz_cip::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<helmholtz_cip::Error> for CliError {
    fn from(e: helmholtz_cip::Error) -> Self {
        use helmholtz_cip::Error as E;
        match e {
            E::InvalidProblem(_) | E::InvalidArgument(_) | E::Unsupported(_) | E::DimensionMismatch { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Numerical(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
