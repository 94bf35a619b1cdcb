use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{}: line {line}: {message}", path.display())]
    DataLine { path: PathBuf, line: u64, message: String },
    #[error("{}: {message}", path.display())]
    Data { path: PathBuf, message: String },
    #[error("invalid data: {0}")]
    Model(#[source] smmala::Error),
    #[error("numerical failure: {0}")]
    Numerical(#[source] smmala::Error),
    #[error("cannot write {}: {source}", path.display())]
    Output { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// Process exit status: 2 config, 3 data, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::DataLine { .. } | CliError::Data { .. } | CliError::Model(_) | CliError::Output { .. } => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

/// Sampler errors: evaluation blow-ups are numerical, everything else is a
/// problem with the configuration handed to the sampler.
pub(crate) fn from_sampler(e: smmala::Error) -> CliError {
    match e {
        smmala::Error::Evaluation { .. } | smmala::Error::NotPositiveDefinite { .. } | smmala::Error::Singular { .. } => {
            CliError::Numerical(e)
        }
        smmala::Error::InvalidParameter(_) | smmala::Error::DimensionMismatch { .. } => CliError::Config(e.to_string()),
        _ => CliError::Numerical(e),
    }
}
