//! Density matrices on a Fock cutoff with explicit bookkeeping of the trace
//! lost to truncation.

use bgc_core::linalg::{self, c, CMatrix};
use nalgebra::DVector;

use crate::config::OracleConfig;
use crate::error::{FockError, Result};
use crate::ops::CVector;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDensityMatrix {
    rho: CMatrix,
    trace_deficit: f64,
}

impl TruncatedDensityMatrix {
    /// Validates Hermiticity, positivity and the trace deficit `1 − tr ρ`.
    pub fn new(rho: CMatrix, config: &OracleConfig) -> Result<Self> {
        if !rho.is_square() {
            return Err(FockError::InvalidState(format!("{}x{} matrix", rho.nrows(), rho.ncols())));
        }
        let defect = linalg::hermiticity_defect(&rho);
        if defect > config.herm_tol {
            return Err(FockError::InvalidState(format!("Hermiticity defect {defect:.3e}")));
        }
        let rho = linalg::hermitian_part(&rho);
        let lowest = linalg::min_eigenvalue(&rho);
        if lowest < -config.psd_tol {
            return Err(FockError::InvalidState(format!("negative eigenvalue {lowest:.3e}")));
        }
        Self::checked(rho, config)
    }

    /// Accepts an operation's output after checking only its trace deficit.
    pub(crate) fn checked(rho: CMatrix, config: &OracleConfig) -> Result<Self> {
        let trace_deficit = 1.0 - rho.trace().re;
        if trace_deficit < -config.trunc_tol {
            return Err(FockError::InvalidState(format!("trace exceeds one by {:.3e}", -trace_deficit)));
        }
        if trace_deficit > config.deficit_budget {
            return Err(FockError::TruncationBudgetExceeded {
                deficit: trace_deficit,
                budget: config.deficit_budget,
            });
        }
        Ok(Self {
            rho,
            trace_deficit: trace_deficit.max(0.0),
        })
    }

    /// `|ψ⟩⟨ψ|` for a vector normalized to one.
    pub fn pure(psi: &CVector) -> Self {
        let rho = psi * psi.adjoint();
        let trace_deficit = (1.0 - rho.trace().re).max(0.0);
        Self { rho, trace_deficit }
    }

    pub fn vacuum(d: usize) -> Self {
        Self::fock(0, d)
    }

    pub fn fock(n: usize, d: usize) -> Self {
        let mut rho = CMatrix::zeros(d, d);
        rho[(n, n)] = c(1.0);
        Self { rho, trace_deficit: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self) -> Vec<f64> {
        spectrum(&self.rho)
    }

    pub fn von_neumann_entropy(&self, eig_floor: f64) -> f64 {
        entropy_of_spectrum(&self.spectrum(), eig_floor)
    }

    pub fn mean_photon_number(&self) -> f64 {
        (0..self.dim()).map(|n| n as f64 * self.rho[(n, n)].re).sum()
    }

    /// Highest level with nonzero population.
    pub fn highest_level(&self) -> usize {
        (0..self.dim()).rev().find(|&n| self.rho[(n, n)].re > 0.0).unwrap_or(0)
    }

    /// Transpose in the Fock basis.
    pub fn transpose(&self) -> Self {
        Self {
            rho: self.rho.transpose(),
            trace_deficit: self.trace_deficit,
        }
    }

    /// `U ρ U*`.
    pub fn conjugated_by(&self, u: &CMatrix) -> Self {
        Self {
            rho: linalg::hermitian_part(&(u * &self.rho * u.adjoint())),
            trace_deficit: self.trace_deficit,
        }
    }

    /// Zero-padded to cutoff `d ≥ dim`.
    pub fn embedded(&self, d: usize) -> Self {
        assert!(d >= self.dim(), "cannot embed into a smaller cutoff");
        let mut rho = CMatrix::zeros(d, d);
        rho.view_mut((0, 0), (self.dim(), self.dim())).copy_from(&self.rho);
        Self {
            rho,
            trace_deficit: self.trace_deficit,
        }
    }

    /// `‖ρ − σ‖₁`, padding the smaller cutoff with zeros.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        let d = self.dim().max(other.dim());
        let diff = self.embedded(d).rho - other.embedded(d).rho;
        linalg::eigvalsh(&linalg::hermitian_part(&diff)).iter().map(|x| x.abs()).sum()
    }
}

/// Eigenvalues in descending order. Diagonal input skips the eigensolver.
pub fn spectrum(rho: &CMatrix) -> Vec<f64> {
    let d = rho.nrows();
    let diagonal = (0..d).all(|i| (0..d).all(|j| i == j || rho[(i, j)] == c(0.0)));
    let mut values: Vec<f64> = if diagonal {
        rho.diagonal().iter().map(|x| x.re).collect()
    } else {
        linalg::eigvalsh(rho).iter().copied().collect()
    };
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// `−Σ λ log λ` over eigenvalues above `eig_floor`.
pub fn entropy_of_spectrum(spectrum: &[f64], eig_floor: f64) -> f64 {
    spectrum.iter().filter(|&&x| x > eig_floor).map(|&x| -x * x.ln()).sum()
}

pub fn von_neumann_entropy(rho: &TruncatedDensityMatrix, config: &OracleConfig) -> f64 {
    rho.von_neumann_entropy(config.eig_floor)
}

/// Largest difference between two descending spectra, the shorter one
/// padded with zeros.
pub fn spectral_distance(a: &[f64], b: &[f64]) -> f64 {
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    (0..a.len().max(b.len())).map(|i| (at(a, i) - at(b, i)).abs()).fold(0.0, f64::max)
}

/// Geometric state `(1−γ) Σ γⁿ |n⟩⟨n|` with `γ = n̄/(n̄+1)` on `d` levels;
/// the missing mass is `γ^d`.
pub fn thermal_state(nbar: f64, d: usize, config: &OracleConfig) -> Result<TruncatedDensityMatrix> {
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(FockError::ParameterOutOfRange {
            name: "nbar",
            value: nbar,
            range: ">= 0",
        });
    }
    if d < 1 {
        return Err(FockError::DimensionTooSmall { dim: d, min: 1 });
    }
    let gamma = nbar / (nbar + 1.0);
    let weights = DVector::from_fn(d, |n, _| c((1.0 - gamma) * gamma.powi(n as i32)));
    let rho = CMatrix::from_diagonal(&weights);
    TruncatedDensityMatrix::checked(rho, config)
}

/// `ρ ⊗ σ` with index `i·dim(σ) + j` for `|i⟩|j⟩`.
pub fn tensor_product(a: &TruncatedDensityMatrix, b: &TruncatedDensityMatrix) -> TruncatedDensityMatrix {
    let rho = a.rho.kronecker(&b.rho);
    let trace_deficit = (1.0 - rho.trace().re).max(0.0);
    TruncatedDensityMatrix { rho, trace_deficit }
}
