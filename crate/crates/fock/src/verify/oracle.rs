//! Fock-space checks of the one-mode theorems and of agreement with the
//! covariance-level library.

use bgc_core::linalg::{self, from_real_diagonal as diag};
use bgc_core::{g, GaussianChannel, GaussianState};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::config::OracleConfig;
use crate::density::{spectral_distance, thermal_state, TruncatedDensityMatrix};
use crate::dilation::{apply_attenuator, Dilation};
use crate::error::Result;
use crate::measure::{measure_reprepare, PhaseSpaceGrid, Repreparation};
use crate::ops::{coherent_vector, displacement, phase_rotation};
use crate::report::{max_of, min_of, Report};
use crate::sampling::{random_pure_state_indexed, rng_for, support_levels};

/// Energy cap of the random pure inputs used by the scans.
pub const ENERGY_CAP: f64 = 4.0;

/// `⟨N⟩ + ½` of the normalized state: the one-mode covariance.
fn covariance(rho: &TruncatedDensityMatrix) -> f64 {
    rho.mean_photon_number() / rho.rho().trace().re + 0.5
}

fn gaussian_output(channel: &GaussianChannel, alpha: f64) -> Result<f64> {
    Ok(channel.apply(&GaussianState::new(diag(&[alpha]))?)?.alpha()[(0, 0)].re)
}

fn report_or_error(check: &str, params: serde_json::Value, run: impl FnOnce() -> Result<Vec<Report>>) -> Vec<Report> {
    run().unwrap_or_else(|e| vec![Report::errored(check, params, e.to_string())])
}

#[derive(Debug, Clone, Serialize)]
pub struct MajorizationScan {
    pub gain: f64,
    pub samples: usize,
    pub vacuum_entropy: f64,
    /// `min S(Φ[ψ]) − S(Φ[vacuum])` over the samples.
    pub min_gap: f64,
    pub worst_sample: Option<usize>,
}

/// Output entropies of the amplifier on seeded random pure states against the
/// vacuum output. Sample `i` uses RNG stream `i`.
pub fn vacuum_majorization_scan(
    gain: f64,
    samples: usize,
    d: usize,
    seed: u64,
    config: &OracleConfig,
) -> Result<MajorizationScan> {
    let amp = Dilation::amplifier(gain, support_levels(ENERGY_CAP), config)?;
    let vacuum_entropy = amp.apply(&TruncatedDensityMatrix::vacuum(d), config)?.0.von_neumann_entropy(config.eig_floor);
    let gaps = (0..samples)
        .into_par_iter()
        .map(|i| {
            let psi = random_pure_state_indexed(d, ENERGY_CAP, seed, i as u64)?;
            let out = amp.apply(&TruncatedDensityMatrix::pure(&psi), config)?.0;
            Ok(out.von_neumann_entropy(config.eig_floor) - vacuum_entropy)
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst_sample = (0..gaps.len()).min_by(|&a, &b| gaps[a].total_cmp(&gaps[b]));
    Ok(MajorizationScan {
        gain,
        samples,
        vacuum_entropy,
        min_gap: min_of(gaps.iter().copied()),
        worst_sample,
    })
}

/// Minimum output entropy of the amplifier is attained on the vacuum, whose
/// output entropy is `g(K² − 1)`.
pub fn verify_vacuum_majorizes_entropy(gain: f64, samples: usize, d: usize, seed: u64, config: &OracleConfig) -> Vec<Report> {
    let params = json!({ "K": gain, "samples": samples, "d": d, "energy_cap": ENERGY_CAP, "seed": seed });
    report_or_error("vacuum_minimizes_output_entropy", params.clone(), || {
        let scan = vacuum_majorization_scan(gain, samples, d, seed, config)?;
        let expected = g(gain * gain - 1.0)?;
        let mut p = params.clone();
        p["worst_sample"] = json!(scan.worst_sample);
        Ok(vec![
            Report::at_least("vacuum_minimizes_output_entropy", p, scan.min_gap, -1e-9),
            Report::at_most("vacuum_output_entropy", params, (scan.vacuum_entropy - expected).abs(), 1e-5),
        ])
    })
}

/// System and environment outputs of the amplifier dilation share their
/// nonzero spectrum, and the environment covariance follows the
/// complementary contravariant channel.
pub fn verify_complementarity(gain: f64, samples: usize, d: usize, seed: u64, config: &OracleConfig) -> Vec<Report> {
    let params = json!({ "K": gain, "samples": samples, "d": d, "energy_cap": ENERGY_CAP, "seed": seed });
    report_or_error("amplifier_complementary_spectra", params.clone(), || {
        let amp = Dilation::amplifier(gain, support_levels(ENERGY_CAP), config)?;
        let complement = GaussianChannel::quantum_limited_amplifier(diag(&[gain]))?.complementary_of_amplifier()?;
        let rows = (0..samples)
            .into_par_iter()
            .map(|i| {
                let psi = random_pure_state_indexed(d, ENERGY_CAP, seed, i as u64)?;
                let rho = TruncatedDensityMatrix::pure(&psi);
                let (out, env) = amp.apply(&rho, config)?;
                let spectra = spectral_distance(&out.spectrum(), &env.spectrum());
                let predicted = gaussian_output(&complement, covariance(&rho))?;
                Ok((spectra, (covariance(&env) - predicted).abs()))
            })
            .collect::<Result<Vec<(f64, f64)>>>()?;
        Ok(vec![
            Report::at_most("amplifier_complementary_spectra", params.clone(), max_of(rows.iter().map(|r| r.0)), 1e-7),
            Report::at_most("complement_covariance", params, max_of(rows.iter().map(|r| r.1)), 1e-6),
        ])
    })
}

/// `Φ`, `Ψ₊`, `Ψ₋` on random pure inputs: equal spectra, `Ψ₋ = T[Φ]` and
/// `e^{−iπN} Ψ₊ e^{iπN} = Ψ₋`.
pub fn verify_measure_reprepare(
    gain: f64,
    samples: usize,
    d: usize,
    grid_points: usize,
    seed: u64,
    config: &OracleConfig,
) -> Vec<Report> {
    let params = json!({ "K": gain, "samples": samples, "d": d, "grid_points": grid_points, "seed": seed });
    report_or_error("measure_reprepare_spectra", params.clone(), || {
        let rows = (0..samples)
            .map(|i| {
                let psi = random_pure_state_indexed(d, ENERGY_CAP, seed, i as u64)?;
                let rho = TruncatedDensityMatrix::pure(&psi);
                let grid = PhaseSpaceGrid::for_state(&rho, grid_points)?;
                let run = |prep| measure_reprepare(gain, &rho, prep, &grid, config).map(|o| o.state);
                let phi = run(Repreparation::Contravariant)?;
                let plus = run(Repreparation::PsiPlus)?;
                let minus = run(Repreparation::PsiMinus)?;
                let (sp, sa, sm) = (phi.spectrum(), plus.spectrum(), minus.spectrum());
                let spectra = max_of([spectral_distance(&sp, &sa), spectral_distance(&sp, &sm), spectral_distance(&sa, &sm)]);
                let transpose = linalg::max_abs_diff(minus.rho(), phi.transpose().rho());
                let parity = phase_rotation(-std::f64::consts::PI, plus.dim());
                let flipped = linalg::max_abs_diff(plus.conjugated_by(&parity).rho(), minus.rho());
                Ok((spectra, transpose, flipped))
            })
            .collect::<Result<Vec<(f64, f64, f64)>>>()?;
        Ok(vec![
            Report::at_most("measure_reprepare_spectra", params.clone(), max_of(rows.iter().map(|r| r.0)), 1e-6),
            Report::at_most("psi_minus_is_transpose", params.clone(), max_of(rows.iter().map(|r| r.1)), 1e-6),
            Report::at_most("psi_plus_parity_relation", params, max_of(rows.iter().map(|r| r.2)), 1e-6),
        ])
    })
}

fn random_disk_point(rng: &mut impl Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// `⟨u|D(w)|u⟩ = exp(2iℑ(ū w) − |w|²/2)` and `|⟨u|w⟩|² = exp(−|u − w|²)`
/// at random points of the unit disk.
pub fn verify_husimi_identity(points: usize, d: usize, seed: u64, config: &OracleConfig) -> Vec<Report> {
    let params = json!({ "points": points, "d": d, "seed": seed });
    report_or_error("husimi_identity", params.clone(), || {
        let mut rng = rng_for(seed, 3);
        let mut identity: f64 = 0.0;
        let mut overlap: f64 = 0.0;
        for _ in 0..points {
            let (u, w) = (random_disk_point(&mut rng, 1.0), random_disk_point(&mut rng, 1.0));
            let vu = coherent_vector(u, d);
            let got = (vu.adjoint() * displacement(w, d, config)? * &vu)[(0, 0)];
            let expected = Complex64::new(-0.5 * w.norm_sqr(), 2.0 * (u.conj() * w).im).exp();
            identity = max_of([identity, (got - expected).norm()]);
            let inner = (vu.adjoint() * coherent_vector(w, d))[(0, 0)].norm_sqr();
            overlap = max_of([overlap, (inner - (-(u - w).norm_sqr()).exp()).abs()]);
        }
        Ok(vec![
            Report::at_most("husimi_identity", params.clone(), identity, 1e-8),
            Report::at_most("coherent_overlap", params, overlap, 1e-8),
        ])
    })
}

/// `D(z)D(z′) = e^{−iℑ(z̄z′)} D(z + z′)` applied to the lowest eighth of the
/// number states, which the truncation cannot reach.
pub fn verify_weyl_relation(points: usize, d: usize, seed: u64, config: &OracleConfig) -> Report {
    let params = json!({ "points": points, "d": d, "seed": seed, "columns": d / 8 });
    let run = || -> Result<f64> {
        let mut rng = rng_for(seed, 4);
        let mut worst: f64 = 0.0;
        for _ in 0..points {
            let (z, zp) = (random_disk_point(&mut rng, 1.0), random_disk_point(&mut rng, 1.0));
            let lhs = displacement(z, d, config)? * displacement(zp, d, config)?;
            let rhs = displacement(z + zp, d, config)? * Complex64::from_polar(1.0, -(z.conj() * zp).im);
            let cols = d / 8;
            worst = max_of([worst, linalg::max_abs_diff(&lhs.columns(0, cols).into_owned(), &rhs.columns(0, cols).into_owned())]);
        }
        Ok(worst)
    };
    match run() {
        Ok(m) => Report::at_most("weyl_relation", params, m, config.trunc_tol),
        Err(e) => Report::errored("weyl_relation", params, e.to_string()),
    }
}

/// Entropy of truncated thermal states against `g(n̄)`.
pub fn verify_thermal_entropy(d: usize, config: &OracleConfig) -> Report {
    let nbars = [0.0, 0.5, 1.0, 2.0, 3.0];
    let params = json!({ "d": d, "nbar": nbars });
    let run = || -> Result<f64> {
        let mut worst: f64 = 0.0;
        for nbar in nbars {
            let s = thermal_state(nbar, d, config)?.von_neumann_entropy(config.eig_floor);
            worst = max_of([worst, (s - g(nbar)?).abs()]);
        }
        Ok(worst)
    };
    match run() {
        Ok(m) => Report::at_most("thermal_entropy", params, m, 1e-6),
        Err(e) => Report::errored("thermal_entropy", params, e.to_string()),
    }
}

/// A one-mode quantum-limited channel with both a covariance rule and a Fock
/// realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OneMode {
    Attenuator(f64),
    Amplifier(f64),
    Contravariant(f64),
}

impl OneMode {
    pub fn gaussian(self) -> Result<GaussianChannel> {
        Ok(match self {
            OneMode::Attenuator(k) => GaussianChannel::quantum_limited_attenuator(diag(&[k]))?,
            OneMode::Amplifier(k) => GaussianChannel::quantum_limited_amplifier(diag(&[k]))?,
            OneMode::Contravariant(k) => GaussianChannel::quantum_limited_contravariant(diag(&[k]))?,
        })
    }

    pub fn apply(self, rho: &TruncatedDensityMatrix, grid_points: usize, config: &OracleConfig) -> Result<TruncatedDensityMatrix> {
        match self {
            OneMode::Attenuator(k) => apply_attenuator(k, rho, config),
            OneMode::Amplifier(k) => Ok(Dilation::amplifier(k, rho.highest_level() + 1, config)?.apply(rho, config)?.0),
            OneMode::Contravariant(k) => {
                let grid = PhaseSpaceGrid::for_state(rho, grid_points)?;
                Ok(measure_reprepare(k, rho, Repreparation::Contravariant, &grid, config)?.state)
            }
        }
    }

    fn label(self) -> String {
        match self {
            OneMode::Attenuator(k) => format!("attenuator({k})"),
            OneMode::Amplifier(k) => format!("amplifier({k})"),
            OneMode::Contravariant(k) => format!("contravariant({k})"),
        }
    }
}

/// Grid radius of the covariance gate in units of `√(n̄ + 1)`.
const GATE_RADIUS: f64 = 6.0;

/// Output covariance of each Fock realization on thermal inputs against the
/// covariance rule.
pub fn verify_gaussian_agreement(grid_points: usize, config: &OracleConfig) -> Vec<Report> {
    let cases = [
        (OneMode::Attenuator(0.6), 40),
        (OneMode::Amplifier(1.3), 24),
        (OneMode::Contravariant(0.5), 40),
        (OneMode::Contravariant(1.0), 40),
    ];
    let nbars = [0.0, 0.5, 1.0];
    cases
        .iter()
        .map(|&(channel, d)| {
            let params = json!({ "channel": channel.label(), "d": d, "nbar": nbars, "grid_points": grid_points });
            let run = || -> Result<f64> {
                let gaussian = channel.gaussian()?;
                let mut worst: f64 = 0.0;
                for nbar in nbars {
                    let rho = thermal_state(nbar, d, config)?;
                    let out = match channel {
                        // The default radius leaves ~e⁻¹⁶ of Husimi mass off the grid, far
                        // above trunc_tol once weighted by |z|²; widen it for this gate.
                        OneMode::Contravariant(k) => {
                            let grid = PhaseSpaceGrid::new(GATE_RADIUS * (nbar + 1.0).sqrt(), grid_points)?;
                            measure_reprepare(k, &rho, Repreparation::Contravariant, &grid, config)?.state
                        }
                        _ => channel.apply(&rho, grid_points, config)?,
                    };
                    let expected = gaussian_output(&gaussian, covariance(&rho))?;
                    worst = max_of([worst, (covariance(&out) - expected).abs()]);
                }
                Ok(worst)
            };
            match run() {
                Ok(m) => Report::at_most("gaussian_agreement", params, m, config.trunc_tol),
                Err(e) => Report::errored("gaussian_agreement", params, e.to_string()),
            }
        })
        .collect()
}

/// Two channels applied in sequence in Fock space against the covariance of
/// their concatenation, for each pair of kinds.
pub fn verify_concatenation_kinds(grid_points: usize, config: &OracleConfig) -> Vec<Report> {
    let pairs = [
        (OneMode::Attenuator(0.8), OneMode::Amplifier(1.2)),
        (OneMode::Attenuator(0.8), OneMode::Contravariant(0.7)),
        (OneMode::Contravariant(0.7), OneMode::Attenuator(0.8)),
        (OneMode::Contravariant(0.7), OneMode::Contravariant(0.5)),
    ];
    let d = 24;
    pairs
        .iter()
        .map(|&(first, second)| {
            let params = json!({ "first": first.label(), "second": second.label(), "d": d, "nbar": 0.5 });
            let run = || -> Result<f64> {
                let joint = GaussianChannel::concatenate(&second.gaussian()?, &first.gaussian()?)?;
                let rho = thermal_state(0.5, d, config)?;
                let out = second.apply(&first.apply(&rho, grid_points, config)?, grid_points, config)?;
                Ok((covariance(&out) - gaussian_output(&joint, covariance(&rho))?).abs())
            };
            match run() {
                Ok(m) => Report::at_most("concatenation_covariance", params, m, 1e-6),
                Err(e) => Report::errored("concatenation_covariance", params, e.to_string()),
            }
        })
        .collect()
}
