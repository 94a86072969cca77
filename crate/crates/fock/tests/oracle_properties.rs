use bgc_core::linalg::{self, c, max_abs_diff};
use bgc_fock::ops::CVector;
use bgc_fock::sampling::random_pure_state_indexed;
use bgc_fock::verify::{oracle, verify_chain, OneMode};
use bgc_fock::{
    apply_amplifier, apply_attenuator, displacement, run_suite, OracleConfig, Suite, SuiteOptions, TruncatedDensityMatrix,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn assert_physical(rho: &TruncatedDensityMatrix, cfg: &OracleConfig) {
    assert!(linalg::hermiticity_defect(rho.rho()) <= cfg.herm_tol);
    assert!((rho.rho().trace().re - 1.0).abs() <= cfg.trunc_tol);
    assert!(linalg::min_eigenvalue(rho.rho()) >= -cfg.psd_tol);
}

#[test]
fn every_channel_returns_a_state() {
    let cfg = OracleConfig::default();
    let channels = [
        OneMode::Attenuator(0.3),
        OneMode::Attenuator(0.9),
        OneMode::Amplifier(1.1),
        OneMode::Amplifier(2.0),
        OneMode::Contravariant(0.0),
        OneMode::Contravariant(0.8),
        OneMode::Contravariant(1.5),
    ];
    for i in 0..4 {
        let psi = random_pure_state_indexed(40, 4.0, 8, i).unwrap();
        let rho = TruncatedDensityMatrix::pure(&psi);
        for ch in channels {
            assert_physical(&ch.apply(&rho, 64, &cfg).unwrap(), &cfg);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn attenuators_form_a_semigroup(k1 in 0.05f64..1.0, k2 in 0.05f64..1.0, seed in any::<u64>()) {
        let cfg = OracleConfig::default();
        let rho = TruncatedDensityMatrix::pure(&random_pure_state_indexed(30, 6.0, seed, 0).unwrap());
        let twice = apply_attenuator(k1, &apply_attenuator(k2, &rho, &cfg).unwrap(), &cfg).unwrap();
        let once = apply_attenuator(k1 * k2, &rho, &cfg).unwrap();
        prop_assert!(max_abs_diff(twice.rho(), once.rho()) <= cfg.trunc_tol);
    }

    #[test]
    fn amplifier_environment_matches_system_spectrum(gain in 1.0f64..2.5, seed in any::<u64>()) {
        let cfg = OracleConfig::default();
        let rho = TruncatedDensityMatrix::pure(&random_pure_state_indexed(20, 3.0, seed, 0).unwrap());
        let (out, env) = apply_amplifier(gain, &rho, &cfg).unwrap();
        prop_assert!(bgc_fock::spectral_distance(&out.spectrum(), &env.spectrum()) <= 1e-7);
    }
}

#[test]
fn displacement_is_unitary_and_obeys_weyl() {
    let cfg = OracleConfig::default();
    let z = Complex64::new(0.6, -0.9);
    let d = displacement(z, 40, &cfg).unwrap();
    assert!(linalg::is_unitary(&d, 1e-10));
    assert!(oracle::verify_weyl_relation(10, 40, 5, &cfg).pass);
}

#[test]
fn covariance_gate_for_every_kind_pair() {
    let cfg = OracleConfig::default();
    for r in oracle::verify_concatenation_kinds(64, &cfg) {
        assert!(r.pass, "{r:?}");
    }
}

fn fock_vector(n: usize, d: usize) -> CVector {
    let mut v = CVector::zeros(d);
    v[n] = c(1.0);
    v
}

#[test]
fn two_photon_chain_reaches_one_thirty_second() {
    let r = verify_chain(2f64.sqrt(), &fock_vector(2, 40), 6, &OracleConfig::default()).unwrap();
    assert!((r.photon_numbers[6] - 0.03125).abs() < 1e-12);
    assert!(r.trace_distances.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn single_photon_spectral_equality_at_fifty_levels() {
    let r = verify_chain(2f64.sqrt(), &fock_vector(1, 50), 1, &OracleConfig::default()).unwrap();
    assert!(r.spectral_distance <= 1e-6);
}

/// Small photon number does not mean small trace distance: coherences decay
/// like `√⟨N⟩`. For `(|0⟩ + |1⟩)/√2` the distance to the vacuum stays above
/// 1e-3 well after `⟨N⟩` has dropped below 1e-3, while `2√⟨N⟩` still bounds it.
#[test]
fn photon_number_alone_does_not_bound_trace_distance() {
    let mut psi = CVector::zeros(10);
    psi[0] = c(0.5f64.sqrt());
    psi[1] = c(0.5f64.sqrt());
    let r = verify_chain(2f64.sqrt(), &psi, 16, &OracleConfig::default()).unwrap();
    let m = r.photon_numbers.iter().position(|&n| n < 1e-3).unwrap();
    assert!(r.trace_distances[m] > 1e-3, "distance {} at ⟨N⟩ {}", r.trace_distances[m], r.photon_numbers[m]);
    for (t, n) in r.trace_distances.iter().zip(&r.photon_numbers) {
        assert!(*t <= 2.0 * n.sqrt() + 1e-12);
    }
    assert!(r.trace_distances.windows(2).all(|w| w[1] <= w[0] + 1e-15));
}

#[test]
fn oracle_suite_is_reproducible() {
    let cfg = OracleConfig::default();
    let opts = SuiteOptions { seed: 11, samples: 20, ..SuiteOptions::default() };
    let a = serde_json::to_string(&run_suite(Suite::Oracle, &opts, &cfg)).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::Oracle, &opts, &cfg)).unwrap();
    assert_eq!(a, b);
    let reports: Vec<bgc_fock::Report> = serde_json::from_str(&a).unwrap();
    assert!(reports.iter().all(|r| r.pass), "{a}");
}
