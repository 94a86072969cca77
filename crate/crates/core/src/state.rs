//! Gauge-invariant Gaussian states described by their complex covariance operator.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};
use crate::tolerance::Tolerances;

/// A gauge-invariant Gaussian state with zero mean.
///
/// The characteristic function is `tr ρ D(z) = exp(−z* α z)`, so the vacuum
/// has `α = I/2` and a one-mode thermal state with mean photon number `n̄`
/// has `α = n̄ + 1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    alpha: CMatrix,
}

impl GaussianState {
    pub fn new(alpha: CMatrix) -> Result<Self> {
        Self::with_tolerances(alpha, &Tolerances::default())
    }

    pub fn with_tolerances(alpha: CMatrix, tol: &Tolerances) -> Result<Self> {
        if !alpha.is_square() || alpha.nrows() == 0 {
            return Err(Error::ShapeMismatch {
                name: "alpha",
                rows: alpha.nrows(),
                cols: alpha.ncols(),
                expected: "square, at least 1x1".into(),
            });
        }
        let defect = linalg::hermiticity_defect(&alpha);
        if defect > tol.herm {
            return Err(Error::NotHermitian { name: "alpha", defect });
        }
        let alpha = linalg::hermitian_part(&alpha);
        let n = alpha.nrows();
        let min_eigenvalue = linalg::min_eigenvalue(&(&alpha - linalg::identity(n) * c(0.5)));
        if min_eigenvalue < -tol.psd {
            return Err(Error::BelowVacuum { min_eigenvalue });
        }
        Ok(Self { alpha })
    }

    pub fn vacuum(modes: usize) -> Self {
        Self { alpha: linalg::identity(modes) * c(0.5) }
    }

    /// Product of one-mode thermal states with the given mean photon numbers.
    pub fn thermal(mean_photons: &[f64]) -> Result<Self> {
        if let Some(&bad) = mean_photons.iter().find(|&&n| !(n >= 0.0)) {
            return Err(Error::BelowVacuum { min_eigenvalue: bad });
        }
        let diag: Vec<f64> = mean_photons.iter().map(|n| n + 0.5).collect();
        Self::new(linalg::from_real_diagonal(&diag))
    }

    pub fn modes(&self) -> usize {
        self.alpha.nrows()
    }

    pub fn alpha(&self) -> &CMatrix {
        &self.alpha
    }

    /// `α − I/2`, whose eigenvalues are the normal-mode photon numbers.
    pub fn excess_over_vacuum(&self) -> CMatrix {
        &self.alpha - linalg::identity(self.modes()) * c(0.5)
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.excess_over_vacuum().trace().re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_is_valid_in_any_dimension() {
        for s in 1..5 {
            let half = linalg::identity(s) * c(0.5);
            assert!(GaussianState::new(half).is_ok());
        }
    }

    #[test]
    fn thermal_one_photon() {
        let st = GaussianState::new(linalg::from_real_diagonal(&[1.5])).unwrap();
        assert!((st.mean_photon_number() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_below_vacuum() {
        let err = GaussianState::new(linalg::from_real_diagonal(&[0.4])).unwrap_err();
        match err {
            Error::BelowVacuum { min_eigenvalue } => assert!((min_eigenvalue + 0.1).abs() < 1e-12),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = CMatrix::from_fn(2, 2, |i, j| if i == 0 && j == 1 { c(1.0) } else if i == j { c(2.0) } else { c(0.0) });
        assert!(matches!(GaussianState::new(a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn rejects_non_square() {
        assert!(matches!(GaussianState::new(CMatrix::zeros(2, 3)), Err(Error::ShapeMismatch { .. })));
    }
}
