use serde::{Deserialize, Serialize};

/// Truncation and accuracy budgets of the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleConfig {
    /// Largest trace an operation may lose to the Fock cutoff.
    pub deficit_budget: f64,
    /// Accuracy expected from exact-in-principle truncated operations.
    pub trunc_tol: f64,
    /// Eigenvalues at or below this are dropped from entropy sums.
    pub eig_floor: f64,
    /// Tail mass the amplifier and repreparation cutoffs aim for.
    pub tail_target: f64,
    /// Largest Husimi mass a phase-space grid may miss.
    pub tail_budget: f64,
    /// Hard cap on any output cutoff.
    pub max_dim: usize,
    pub herm_tol: f64,
    pub psd_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            deficit_budget: 1e-6,
            trunc_tol: 1e-8,
            eig_floor: 1e-14,
            tail_target: 1e-14,
            tail_budget: 1e-6,
            max_dim: 1024,
            herm_tol: 1e-10,
            psd_tol: 1e-8,
        }
    }
}
