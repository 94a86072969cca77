//! Ladder, number, phase and displacement operators on the first `d` Fock
//! levels, and coherent-state vectors.

use bgc_core::linalg::{c, CMatrix};
use nalgebra::DVector;
use num_complex::Complex64;

use crate::config::OracleConfig;
use crate::error::{FockError, Result};

pub type CVector = DVector<Complex64>;

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(FockError::DimensionTooSmall { dim: d, min: 2 });
    }
    Ok(())
}

/// `a|n⟩ = √n |n−1⟩`. On the cutoff space `[a, a†] = I` holds only on the
/// first `d − 1` levels; the last diagonal entry is `−(d − 1)`.
pub fn annihilation(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let mut a = CMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = c((n as f64).sqrt());
    }
    Ok(a)
}

pub fn creation(d: usize) -> Result<CMatrix> {
    Ok(annihilation(d)?.adjoint())
}

pub fn number_operator(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    Ok(CMatrix::from_diagonal(&DVector::from_fn(d, |n, _| c(n as f64))))
}

/// `e^{iφN}`.
pub fn phase_rotation(phi: f64, d: usize) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_fn(d, |n, _| Complex64::from_polar(1.0, phi * n as f64)))
}

/// Components `e^{−|z|²/2} zⁿ/√n!` of `|z⟩` on the first `d` levels.
pub fn coherent_vector(z: Complex64, d: usize) -> CVector {
    let mut v = CVector::zeros(d);
    if d == 0 {
        return v;
    }
    v[0] = c((-0.5 * z.norm_sqr()).exp());
    for n in 1..d {
        v[n] = v[n - 1] * z / (n as f64).sqrt();
    }
    v
}

/// Poisson tail `Σ_{n≥d} e^{−x} xⁿ/n!` with `x = |z|²`: the mass of `|z⟩`
/// above the cutoff.
pub fn coherent_tail(z: Complex64, d: usize) -> f64 {
    let x = z.norm_sqr();
    if x == 0.0 {
        return if d == 0 { 1.0 } else { 0.0 };
    }
    let log_factorial: f64 = (1..=d).map(|k| (k as f64).ln()).sum();
    let mut p = (-x + d as f64 * x.ln() - log_factorial).exp();
    let mut tail = 0.0;
    let mut n = d;
    while p > 0.0 && (p > 1e-18 * tail || (n as f64) < x) {
        tail += p;
        n += 1;
        p *= x / n as f64;
    }
    tail.min(1.0)
}

/// `D(z) = exp(z a† − z̄ a)` by matrix exponential. The truncated generator is
/// anti-Hermitian so the result is exactly unitary; it agrees with the true
/// displacement on states that stay below the cutoff, which is checked on the
/// vacuum: `|z⟩` may not put more than `trunc_tol` above level `d`.
pub fn displacement(z: Complex64, d: usize, config: &OracleConfig) -> Result<CMatrix> {
    check_dim(d)?;
    let tail = coherent_tail(z, d);
    if tail > config.trunc_tol {
        return Err(FockError::TruncationBudgetExceeded {
            deficit: tail,
            budget: config.trunc_tol,
        });
    }
    let a = annihilation(d)?;
    let generator = a.adjoint() * z - a * z.conj();
    Ok(generator.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bgc_core::linalg::{identity, max_abs_diff};

    #[test]
    fn ladder_matrices() {
        let a = annihilation(2).unwrap();
        assert_eq!(a[(0, 1)], c(1.0));
        assert_eq!(a[(1, 0)], c(0.0));
        let n = number_operator(3).unwrap();
        assert_eq!(n, CMatrix::from_diagonal(&DVector::from_vec(vec![c(0.0), c(1.0), c(2.0)])));
        assert_eq!(annihilation(1), Err(FockError::DimensionTooSmall { dim: 1, min: 2 }));
    }

    #[test]
    fn commutator_is_identity_below_the_cutoff() {
        let d = 12;
        let a = annihilation(d).unwrap();
        let comm = &a * a.adjoint() - a.adjoint() * &a;
        let block = comm.view((0, 0), (d - 1, d - 1)).into_owned();
        assert!(max_abs_diff(&block, &identity(d - 1)) < 1e-14);
        assert!((comm[(d - 1, d - 1)].re + (d - 1) as f64).abs() < 1e-12);
        assert!(max_abs_diff(&(a.adjoint() * &a), &number_operator(d).unwrap()) < 1e-13);
    }

    #[test]
    fn displacement_of_zero_is_identity() {
        let d = displacement(c(0.0), 10, &OracleConfig::default()).unwrap();
        assert!(max_abs_diff(&d, &identity(10)) < 1e-15);
    }

    #[test]
    fn displaced_vacuum_is_the_coherent_vector() {
        let cfg = OracleConfig::default();
        for z in [Complex64::new(0.3, -0.2), Complex64::new(1.2, 0.9), Complex64::new(-2.0, 0.0), Complex64::new(0.0, 2.0)] {
            let dz = displacement(z, 40, &cfg).unwrap();
            let col = dz.column(0).into_owned();
            assert!((col - coherent_vector(z, 40)).camax() <= 1e-8, "z = {z}");
        }
    }

    #[test]
    fn displacement_refuses_large_amplitudes() {
        let err = displacement(c(5.0), 20, &OracleConfig::default()).unwrap_err();
        assert!(matches!(err, FockError::TruncationBudgetExceeded { .. }));
    }

    #[test]
    fn coherent_tail_matches_direct_sum() {
        for (z, d) in [(c(1.0), 3), (Complex64::new(1.5, 1.0), 8), (c(3.0), 30)] {
            let v = coherent_vector(z, d);
            let inside: f64 = v.iter().map(|x| x.norm_sqr()).sum();
            assert!((coherent_tail(z, d) - (1.0 - inside)).abs() < 1e-14);
        }
    }

    #[test]
    fn phase_rotation_by_pi_flips_coherent_states() {
        let z = Complex64::new(0.7, -0.4);
        let flipped = phase_rotation(std::f64::consts::PI, 30) * coherent_vector(z, 30);
        assert!((flipped - coherent_vector(-z, 30)).camax() < 1e-14);
    }
}
