//! The amplifier/attenuator chain behind the vacuum-minimizer argument.
//!
//! With `Φ` the quantum-limited amplifier of gain `K²` and `Φ₁` the
//! attenuator with `k₁ = √(K²−1)/K`, `Φ[ψ]` and `Φ[Φ₁[ψ]]` share their
//! spectrum on pure inputs. Repeating the spectral split of `Φ₁` along every
//! branch gives an ensemble `{pᵢ, ψᵢ}` of `Φ₁ⁿ[ψ]` with
//! `S(Φ[ψ]) ≥ Σ pᵢ S(Φ[ψᵢ])`, while `Φ₁ⁿ[ψ]` drains to the vacuum.

use bgc_core::linalg::{self, c};
use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::config::OracleConfig;
use crate::density::{spectral_distance, TruncatedDensityMatrix};
use crate::dilation::Dilation;
use crate::error::{FockError, Result};
use crate::ops::CVector;
use crate::report::{max_of, min_of, Report};

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub gain: f64,
    pub steps: usize,
    /// Spectral distance between `Φ[ψ]` and `Φ[Φ₁[ψ]]`.
    pub spectral_distance: f64,
    /// `S(Φ[ψ]) − Σ pᵢ S(Φ[ψᵢ])` for the ensembles after `1..=n` steps.
    pub concavity_margins: Vec<f64>,
    /// `‖Σ pᵢ |ψᵢ⟩⟨ψᵢ| − Φ₁ᵐ[ψ]‖` (max entry) for `m = 1..=n`.
    pub ensemble_errors: Vec<f64>,
    pub ensemble_sizes: Vec<usize>,
    /// `⟨N⟩` of `Φ₁ᵐ[ψ]` for `m = 0..=n`.
    pub photon_numbers: Vec<f64>,
    /// `‖Φ₁ᵐ[ψ] − |0⟩⟨0|‖₁` for `m = 0..=n`.
    pub trace_distances: Vec<f64>,
}

/// Eigenpairs of `rho` above `floor`, computed on the populated block so the
/// vectors stay on levels the amplifier dilation covers.
fn ensemble_of(rho: &TruncatedDensityMatrix, levels: usize, floor: f64) -> Vec<(f64, CVector)> {
    let block = rho.rho().view((0, 0), (levels, levels)).into_owned();
    let (values, vectors) = linalg::eigh(&linalg::hermitian_part(&block));
    (0..levels)
        .rev()
        .filter(|&i| values[i] > floor)
        .map(|i| {
            let mut v = DVector::from_element(rho.dim(), Complex64::new(0.0, 0.0));
            v.rows_mut(0, levels).copy_from(&vectors.column(i));
            (values[i], v)
        })
        .collect()
}

pub fn verify_chain(gain: f64, psi: &CVector, steps: usize, config: &OracleConfig) -> Result<ChainReport> {
    if !(gain > 1.0 && gain.is_finite()) {
        return Err(FockError::ParameterOutOfRange { name: "K", value: gain, range: "> 1" });
    }
    if steps == 0 {
        return Err(FockError::ParameterOutOfRange { name: "n", value: 0.0, range: ">= 1" });
    }
    let d = psi.len();
    let rho = TruncatedDensityMatrix::pure(psi);
    let levels = rho.highest_level() + 1;
    let amp = Dilation::amplifier(gain, levels, config)?;
    let att = Dilation::attenuator((gain * gain - 1.0).sqrt() / gain, d)?;
    let entropy_after = |state: &TruncatedDensityMatrix| -> Result<f64> {
        Ok(amp.apply(state, config)?.0.von_neumann_entropy(config.eig_floor))
    };

    let out = amp.apply(&rho, config)?.0;
    let s_out = out.von_neumann_entropy(config.eig_floor);
    let vacuum = TruncatedDensityMatrix::vacuum(d);

    let mut current = rho.clone();
    let mut photon_numbers = vec![rho.mean_photon_number()];
    let mut trace_distances = vec![rho.trace_distance(&vacuum)];
    let mut leaves = vec![(1.0, psi.clone())];
    let mut spectral = f64::NAN;
    let mut concavity_margins = Vec::with_capacity(steps);
    let mut ensemble_errors = Vec::with_capacity(steps);
    let mut ensemble_sizes = Vec::with_capacity(steps);
    for m in 1..=steps {
        current = att.apply(&current, config)?.0;
        if m == 1 {
            spectral = spectral_distance(&out.spectrum(), &amp.apply(&current, config)?.0.spectrum());
        }
        photon_numbers.push(current.mean_photon_number());
        trace_distances.push(current.trace_distance(&vacuum));

        let mut next = Vec::new();
        for (p, v) in &leaves {
            let branch = att.apply(&TruncatedDensityMatrix::pure(v), config)?.0;
            next.extend(ensemble_of(&branch, levels, config.eig_floor).into_iter().map(|(q, w)| (p * q, w)));
        }
        leaves = next;

        let mut mixture = linalg::CMatrix::zeros(d, d);
        let mut average = 0.0;
        for (p, v) in &leaves {
            mixture += v * v.adjoint() * c(*p);
            average += p * entropy_after(&TruncatedDensityMatrix::pure(v))?;
        }
        ensemble_errors.push(linalg::max_abs_diff(&mixture, current.rho()));
        concavity_margins.push(s_out - average);
        ensemble_sizes.push(leaves.len());
    }

    Ok(ChainReport {
        gain,
        steps,
        spectral_distance: spectral,
        concavity_margins,
        ensemble_errors,
        ensemble_sizes,
        photon_numbers,
        trace_distances,
    })
}

impl ChainReport {
    /// `(K² − 1)/K²`, the photon-number factor of one attenuator step.
    pub fn contraction(&self) -> f64 {
        (self.gain * self.gain - 1.0) / (self.gain * self.gain)
    }

    pub fn reports(&self, label: &str, config: &OracleConfig) -> Vec<Report> {
        let params = json!({ "state": label, "K": self.gain, "n": self.steps });
        let c = self.contraction();
        let contraction = max_of(self.photon_numbers.windows(2).map(|w| (w[1] - c * w[0]).abs()));
        let rise = max_of(self.trace_distances.windows(2).map(|w| w[1] - w[0]));
        let over_bound = max_of(
            self.trace_distances
                .iter()
                .zip(&self.photon_numbers)
                .map(|(t, n)| t - 2.0 * n.max(0.0).sqrt()),
        );
        vec![
            Report::at_most("chain_spectral_equality", params.clone(), self.spectral_distance, 1e-6),
            Report::at_least("chain_concavity_bound", params.clone(), min_of(self.concavity_margins.iter().copied()), -1e-9),
            Report::at_most("chain_ensemble_decomposes_state", params.clone(), max_of(self.ensemble_errors.iter().copied()), 1e-10),
            Report::at_most("chain_energy_contraction", params.clone(), contraction, config.trunc_tol),
            Report::at_most("chain_trace_distance_monotone", params.clone(), rise, 1e-12),
            Report::at_most("chain_trace_distance_energy_bound", params, over_bound, 1e-12),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_pure_state;

    fn fock_vector(n: usize, d: usize) -> CVector {
        let mut v = CVector::zeros(d);
        v[n] = c(1.0);
        v
    }

    #[test]
    fn vacuum_is_a_fixed_point() {
        let cfg = OracleConfig::default();
        let r = verify_chain(2f64.sqrt(), &fock_vector(0, 10), 2, &cfg).unwrap();
        assert!(r.spectral_distance < 1e-14);
        assert!(r.concavity_margins.iter().all(|m| m.abs() < 1e-12));
        assert!(r.trace_distances.iter().all(|t| *t < 1e-14));
        assert_eq!(r.ensemble_sizes, vec![1, 1]);
    }

    #[test]
    fn two_photons_halve_each_step() {
        let cfg = OracleConfig::default();
        let r = verify_chain(2f64.sqrt(), &fock_vector(2, 40), 6, &cfg).unwrap();
        assert!((r.photon_numbers[6] - 0.03125).abs() < 1e-12);
        assert!(r.reports("fock_2", &cfg).iter().all(|x| x.pass));
    }

    #[test]
    fn random_state_passes_all_checks() {
        let cfg = OracleConfig::default();
        let psi = random_pure_state(40, 4.0, 5).unwrap();
        let r = verify_chain(1.5, &psi, 3, &cfg).unwrap();
        for rep in r.reports("random", &cfg) {
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn rejects_unit_gain() {
        assert!(verify_chain(1.0, &fock_vector(1, 10), 1, &OracleConfig::default()).is_err());
    }
}
