use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("Fock cutoff {dim} is below the minimum {min}")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("truncation loses {deficit:.3e} of the trace (budget {budget:.1e})")]
    TruncationBudgetExceeded { deficit: f64, budget: f64 },

    #[error("phase-space grid misses {tail:.3e} of the Husimi mass (budget {budget:.1e})")]
    GridBudgetExceeded { tail: f64, budget: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("parameter `{name}` = {value} out of range ({range})")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error(transparent)]
    Core(#[from] bgc_core::Error),
}

pub type Result<T> = std::result::Result<T, FockError>;
