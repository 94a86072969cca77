//! Gauge-covariant and gauge-contravariant bosonic Gaussian channels at the
//! level of their matrix parameters `(K, μ)`.
//!
//! - [`channel`]: validation, classification, action on Gaussian states,
//!   concatenation, complementarity and the entanglement-breaking test.
//! - [`decompose`]: attenuator-then-amplifier decomposition and the singular
//!   value form of quantum-limited channels.
//! - [`entropy`] and [`capacity`]: output entropies and the energy-constrained
//!   classical capacity (general solver and commuting water-filling).
//! - [`closed_form`]: one-mode capacity formulas and the Shannon baseline.

pub mod capacity;
pub mod channel;
pub mod closed_form;
pub mod decompose;
pub mod entropy;
pub mod error;
pub mod json;
pub mod linalg;
pub mod sampling;
pub mod state;
pub mod tolerance;

pub use capacity::{
    constrained_capacity, constrained_capacity_with, waterfilling_commuting, CapacityObjective, CapacityResult,
    EnergyConstraint, OptimizerOptions,
};
pub use channel::{ChannelClass, ChannelKind, ClassTag, GaussianChannel};
pub use closed_form::{additive_capacity, amplifier_capacity, shannon_capacity, thermal_capacity};
pub use decompose::{decompose, diagonalize, ChannelDecomposition, DiagonalForm};
pub use entropy::{g, g_prime, gaussian_entropy, min_output_entropy, LogBase};
pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use state::GaussianState;
pub use tolerance::Tolerances;
