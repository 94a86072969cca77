use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::chain::verify_chain;
use super::core;
use super::oracle::{self, ENERGY_CAP};
use crate::config::OracleConfig;
use crate::ops::CVector;
use crate::report::Report;
use crate::sampling::random_pure_state_indexed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Oracle,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(Suite::Core),
            "oracle" => Ok(Suite::Oracle),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite '{other}' (expected core, oracle or all)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Core => "core",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Fock cutoff of the random-state scans.
    pub dim: usize,
    pub grid_points: usize,
    /// Random states per gain in the minimum-output-entropy scan.
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            dim: 40,
            grid_points: 64,
            samples: 1000,
        }
    }
}

/// Gains of the minimum-output-entropy scan.
pub const SCAN_GAINS: [f64; 3] = [1.2, std::f64::consts::SQRT_2, 2.0];

fn fock_vector(n: usize, d: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[n] = num_complex::Complex64::new(1.0, 0.0);
    v
}

fn chain_reports(label: &str, gain: f64, psi: &CVector, steps: usize, config: &OracleConfig) -> Vec<Report> {
    match verify_chain(gain, psi, steps, config) {
        Ok(r) => r.reports(label, config),
        Err(e) => vec![Report::errored(
            "chain_spectral_equality",
            json!({ "state": label, "K": gain, "n": steps }),
            e.to_string(),
        )],
    }
}

fn core_suite(opts: &SuiteOptions) -> Vec<Report> {
    let mut out = core::closed_form_grid();
    out.push(core::shannon_fixture());
    out.extend(core::decomposition_roundtrip(200, opts.seed));
    out.push(core::entanglement_breaking_scan());
    out.extend(core::waterfilling_crosscheck(20, opts.seed));
    out.push(core::gradient_check(50, opts.seed));
    out
}

fn oracle_suite(opts: &SuiteOptions, config: &OracleConfig) -> Vec<Report> {
    let (d, seed) = (opts.dim, opts.seed);
    let mut out = vec![oracle::verify_thermal_entropy(d.max(60), config)];
    out.extend(oracle::verify_husimi_identity(20, d, seed, config));
    out.push(oracle::verify_weyl_relation(10, d, seed, config));
    out.extend(oracle::verify_gaussian_agreement(opts.grid_points, config));
    out.extend(oracle::verify_concatenation_kinds(opts.grid_points, config));
    out.extend(oracle::verify_complementarity(std::f64::consts::SQRT_2, 20, d, seed, config));
    out.extend(oracle::verify_measure_reprepare(1.0, 10, d, opts.grid_points, seed, config));
    for gain in SCAN_GAINS {
        out.extend(oracle::verify_vacuum_majorizes_entropy(gain, opts.samples, d, seed, config));
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    out.extend(chain_reports("fock_2", sqrt2, &fock_vector(2, d), 6, config));
    out.extend(chain_reports("fock_1", sqrt2, &fock_vector(1, d.max(50)), 3, config));
    for (i, gain) in SCAN_GAINS.into_iter().enumerate() {
        let label = format!("random_{i}");
        match random_pure_state_indexed(d, ENERGY_CAP, seed, u64::MAX - i as u64) {
            Ok(psi) => out.extend(chain_reports(&label, gain, &psi, 3, config)),
            Err(e) => out.push(Report::errored("chain_spectral_equality", json!({ "state": label }), e.to_string())),
        }
    }
    out
}

/// Runs a suite. Reports come back in a fixed order and, for fixed options,
/// with identical contents on every run.
pub fn run_suite(suite: Suite, opts: &SuiteOptions, config: &OracleConfig) -> Vec<Report> {
    match suite {
        Suite::Core => core_suite(opts),
        Suite::Oracle => oracle_suite(opts, config),
        Suite::All => {
            let mut out = core_suite(opts);
            out.extend(oracle_suite(opts, config));
            out
        }
    }
}
