use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix `{name}` has shape {rows}x{cols}, expected {expected}")]
    ShapeMismatch {
        name: &'static str,
        rows: usize,
        cols: usize,
        expected: String,
    },

    #[error("matrix `{name}` is not Hermitian (defect {defect:.3e})")]
    NotHermitian { name: &'static str, defect: f64 },

    #[error("covariance violates alpha >= I/2 (smallest eigenvalue of alpha - I/2 is {min_eigenvalue:.3e})")]
    BelowVacuum { min_eigenvalue: f64 },

    #[error("channel inequality violated (most negative eigenvalue {min_eigenvalue:.3e})")]
    InequalityViolated { min_eigenvalue: f64 },

    #[error("mode mismatch: expected {expected} modes, got {found}")]
    ModeMismatch { expected: usize, found: usize },

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("channel is not a quantum-limited covariant amplifier")]
    NotQuantumLimitedAmplifier,

    #[error("amplification matrix is not diagonal")]
    NotDiagonal,

    #[error("channel is not quantum-limited")]
    NotQuantumLimited,

    #[error("g is undefined for negative argument {0}")]
    NegativeArgument(f64),

    #[error("channel and energy matrices are not simultaneously diagonalizable (defect {defect:.3e})")]
    NotCommuting { defect: f64 },

    #[error("parameter `{name}` = {value} out of range ({range})")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("Shannon capacity needs strictly positive noise power")]
    ZeroNoise,

    #[error("invalid energy constraint: {0}")]
    InvalidConstraint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
