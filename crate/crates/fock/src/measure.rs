//! Heterodyne measure-reprepare channels by midpoint quadrature of
//! `∫ d²z/π ⟨z|ρ|z⟩ |w(z)⟩⟨w(z)|`.
//!
//! The contravariant quantum-limited channel reprepares `|−K z̄⟩`; its skewed
//! counterparts reprepare `|K z⟩` and `|−K z⟩`.

use bgc_core::linalg::{self, c, CMatrix};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::OracleConfig;
use crate::density::TruncatedDensityMatrix;
use crate::error::{FockError, Result};
use crate::ops::coherent_vector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceGrid {
    radius: f64,
    points_per_axis: usize,
}

impl PhaseSpaceGrid {
    pub const MIN_POINTS: usize = 16;

    /// Square `[−R, R]²` split into `M × M` cells sampled at their midpoints.
    pub fn new(radius: f64, points_per_axis: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(FockError::ParameterOutOfRange {
                name: "radius",
                value: radius,
                range: "> 0",
            });
        }
        if points_per_axis < Self::MIN_POINTS {
            return Err(FockError::ParameterOutOfRange {
                name: "points_per_axis",
                value: points_per_axis as f64,
                range: ">= 16",
            });
        }
        Ok(Self { radius, points_per_axis })
    }

    /// `R = 4 √(n̄ + 1)` with `n̄` the mean photon number of `rho`.
    pub fn for_state(rho: &TruncatedDensityMatrix, points_per_axis: usize) -> Result<Self> {
        Self::new(4.0 * (rho.mean_photon_number() + 1.0).sqrt(), points_per_axis)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.radius / self.points_per_axis as f64
    }

    /// Quadrature weight `h²/π` of one cell.
    pub fn cell_weight(&self) -> f64 {
        self.spacing().powi(2) / std::f64::consts::PI
    }

    /// Cell midpoints, row-major in `(ℑz, ℜz)`.
    pub fn nodes(&self) -> Vec<Complex64> {
        let h = self.spacing();
        let m = self.points_per_axis;
        let axis: Vec<f64> = (0..m).map(|i| -self.radius + (i as f64 + 0.5) * h).collect();
        axis.iter().flat_map(|&y| axis.iter().map(move |&x| Complex64::new(x, y))).collect()
    }
}

/// Which coherent state is prepared after observing `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Repreparation {
    /// `|−K z̄⟩`, the contravariant channel.
    Contravariant,
    /// `|K z⟩`.
    PsiPlus,
    /// `|−K z⟩`.
    PsiMinus,
}

impl Repreparation {
    fn target(self, gain: f64, z: Complex64) -> Complex64 {
        match self {
            Repreparation::Contravariant => -gain * z.conj(),
            Repreparation::PsiPlus => gain * z,
            Repreparation::PsiMinus => -gain * z,
        }
    }
}

/// Husimi function `⟨z|ρ|z⟩` (without the `1/π`).
pub fn husimi(rho: &TruncatedDensityMatrix, z: Complex64) -> f64 {
    let v = coherent_vector(z, rho.dim());
    (v.adjoint() * rho.rho() * &v)[(0, 0)].re
}

/// Outcome of a quadrature run, before validation.
#[derive(Debug, Clone)]
pub struct QuadratureOutput {
    pub state: TruncatedDensityMatrix,
    /// Husimi mass outside the grid, `tr ρ − Σ w Q(z)`.
    pub grid_tail: f64,
    pub output_dim: usize,
}

/// Measure-reprepare map on `grid`. The output cutoff starts at the input
/// cutoff and grows until repreparations lose at most `tail_target`; the
/// output trace is never renormalized.
pub fn measure_reprepare(
    gain: f64,
    rho: &TruncatedDensityMatrix,
    prep: Repreparation,
    grid: &PhaseSpaceGrid,
    config: &OracleConfig,
) -> Result<QuadratureOutput> {
    if !(gain >= 0.0 && gain.is_finite()) {
        return Err(FockError::ParameterOutOfRange {
            name: "K",
            value: gain,
            range: ">= 0",
        });
    }
    let weight = grid.cell_weight();
    let samples: Vec<(f64, Complex64)> = grid
        .nodes()
        .par_iter()
        .map(|&z| ((weight * husimi(rho, z)).max(0.0), prep.target(gain, z)))
        .collect();
    let captured: f64 = samples.iter().map(|s| s.0).sum();
    let grid_tail = rho.rho().trace().re - captured;
    if grid_tail > config.tail_budget {
        return Err(FockError::GridBudgetExceeded {
            tail: grid_tail,
            budget: config.tail_budget,
        });
    }

    let mut d = rho.dim();
    loop {
        let lost: f64 = samples
            .iter()
            .map(|&(q, w)| q * crate::ops::coherent_tail(w, d))
            .sum();
        if lost <= config.tail_target || d >= config.max_dim {
            break;
        }
        d = (d + d / 2).min(config.max_dim);
    }

    let mut columns = CMatrix::zeros(d, samples.len());
    for (i, &(q, w)) in samples.iter().enumerate() {
        if q > 0.0 {
            columns.set_column(i, &(coherent_vector(w, d) * c(q.sqrt())));
        }
    }
    let out = linalg::hermitian_part(&(&columns * columns.adjoint()));
    Ok(QuadratureOutput {
        state: TruncatedDensityMatrix::checked(out, config)?,
        grid_tail,
        output_dim: d,
    })
}

/// Quantum-limited contravariant channel with parameter `K`.
pub fn apply_contravariant(
    gain: f64,
    rho: &TruncatedDensityMatrix,
    grid: &PhaseSpaceGrid,
    config: &OracleConfig,
) -> Result<TruncatedDensityMatrix> {
    Ok(measure_reprepare(gain, rho, Repreparation::Contravariant, grid, config)?.state)
}

pub fn apply_psi_plus(
    gain: f64,
    rho: &TruncatedDensityMatrix,
    grid: &PhaseSpaceGrid,
    config: &OracleConfig,
) -> Result<TruncatedDensityMatrix> {
    Ok(measure_reprepare(gain, rho, Repreparation::PsiPlus, grid, config)?.state)
}

pub fn apply_psi_minus(
    gain: f64,
    rho: &TruncatedDensityMatrix,
    grid: &PhaseSpaceGrid,
    config: &OracleConfig,
) -> Result<TruncatedDensityMatrix> {
    Ok(measure_reprepare(gain, rho, Repreparation::PsiMinus, grid, config)?.state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{spectral_distance, thermal_state};
    use crate::ops::phase_rotation;
    use bgc_core::linalg::max_abs_diff;

    #[test]
    fn grid_validation() {
        assert!(PhaseSpaceGrid::new(0.0, 64).is_err());
        assert!(PhaseSpaceGrid::new(4.0, 8).is_err());
        let grid = PhaseSpaceGrid::new(4.0, 16).unwrap();
        assert_eq!(grid.nodes().len(), 256);
        assert!((grid.spacing() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn vacuum_through_unit_gain_is_thermal_one() {
        let cfg = OracleConfig::default();
        let vac = TruncatedDensityMatrix::vacuum(40);
        let grid = PhaseSpaceGrid::for_state(&vac, 64).unwrap();
        let out = apply_contravariant(1.0, &vac, &grid, &cfg).unwrap();
        let target = thermal_state(1.0, out.dim(), &cfg).unwrap();
        assert!(max_abs_diff(out.rho(), target.rho()) < 1e-6);
        assert!((out.mean_photon_number() + 0.5 - 1.5).abs() < 1e-6);
    }

    #[test]
    fn zero_gain_prepares_vacuum() {
        let cfg = OracleConfig::default();
        let rho = thermal_state(0.8, 40, &cfg).unwrap();
        let grid = PhaseSpaceGrid::for_state(&rho, 48).unwrap();
        let out = apply_contravariant(0.0, &rho, &grid, &cfg).unwrap();
        let mut vac = TruncatedDensityMatrix::vacuum(out.dim()).rho().clone();
        vac[(0, 0)] = c(out.rho()[(0, 0)].re);
        assert!(max_abs_diff(out.rho(), &vac) < 1e-15);
        assert!((out.rho()[(0, 0)].re - 1.0).abs() < 1e-6);
    }

    #[test]
    fn skewed_channels_are_related_by_transpose_and_parity() {
        let cfg = OracleConfig::default();
        let mut rho = TruncatedDensityMatrix::fock(2, 20).rho().clone() * c(0.5);
        rho[(0, 0)] = c(0.3);
        rho[(1, 1)] = c(0.2);
        rho[(0, 1)] = Complex64::new(0.1, 0.15);
        rho[(1, 0)] = Complex64::new(0.1, -0.15);
        let rho = TruncatedDensityMatrix::new(rho, &cfg).unwrap();
        let grid = PhaseSpaceGrid::for_state(&rho, 64).unwrap();
        let phi = apply_contravariant(1.0, &rho, &grid, &cfg).unwrap();
        let plus = apply_psi_plus(1.0, &rho, &grid, &cfg).unwrap();
        let minus = apply_psi_minus(1.0, &rho, &grid, &cfg).unwrap();
        assert!(max_abs_diff(minus.rho(), phi.transpose().rho()) < 1e-13);
        let parity = phase_rotation(-std::f64::consts::PI, plus.dim());
        assert!(max_abs_diff(plus.conjugated_by(&parity).rho(), minus.rho()) < 1e-13);
        assert!(spectral_distance(&phi.spectrum(), &plus.spectrum()) < 1e-12);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let cfg = OracleConfig::default();
        let rho = thermal_state(1.0, 40, &cfg).unwrap();
        let grid = PhaseSpaceGrid::new(1.5, 32).unwrap();
        assert!(matches!(
            apply_contravariant(1.0, &rho, &grid, &cfg),
            Err(FockError::GridBudgetExceeded { .. })
        ));
    }
}
