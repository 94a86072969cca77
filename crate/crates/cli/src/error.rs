use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, exit code 2.
    #[error("{0}")]
    Parse(String),
    /// Rejected by the library, exit code 3.
    #[error(transparent)]
    Core(#[from] bgc_core::Error),
    #[error(transparent)]
    Oracle(#[from] bgc_fock::FockError),
    /// Checks ran and some failed, exit code 4.
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(_) | CliError::Oracle(_) => 3,
            CliError::Verification { .. } => 4,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
