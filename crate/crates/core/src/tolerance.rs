//! Numerical tolerances shared by validation, classification and the optimizer.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Max entrywise deviation from Hermiticity.
    pub herm: f64,
    /// Max entrywise deviation when comparing matrices for equality.
    pub eq: f64,
    /// Allowed negative slack on eigenvalues in matrix inequalities.
    pub psd: f64,
    /// Relative cutoff for generalized inverses.
    pub sigma_cut: f64,
    /// Allowed excess of `tr(nu eps)` over the energy budget.
    pub constraint: f64,
    /// Target accuracy of the capacity optimizer, in nats.
    pub opt: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            eq: 1e-10,
            psd: 1e-8,
            sigma_cut: 1e-10,
            constraint: 1e-8,
            opt: 1e-6,
        }
    }
}
