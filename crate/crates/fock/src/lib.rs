//! Truncated Fock-space oracle for one-mode Gaussian channels.
//!
//! States are density matrices on the first `d` number states with the trace
//! lost to the cutoff tracked explicitly. Attenuator and amplifier act through
//! their beam-splitter and two-mode-squeezer dilations; the contravariant
//! channel and its skewed counterparts act as heterodyne measure-reprepare
//! maps integrated on a phase-space grid. [`verify`] turns these into
//! pass/fail reports.

pub mod config;
pub mod density;
pub mod dilation;
pub mod error;
pub mod measure;
pub mod ops;
pub mod report;
pub mod sampling;
pub mod verify;

pub use config::OracleConfig;
pub use density::{spectral_distance, spectrum, thermal_state, von_neumann_entropy, TruncatedDensityMatrix};
pub use dilation::{apply_amplifier, apply_attenuator, Dilation};
pub use error::{FockError, Result};
pub use measure::{apply_contravariant, apply_psi_minus, apply_psi_plus, husimi, PhaseSpaceGrid, Repreparation};
pub use ops::{annihilation, coherent_vector, displacement, number_operator, phase_rotation};
pub use report::Report;
pub use sampling::random_pure_state;
pub use verify::{run_suite, Suite, SuiteOptions};
