use bgc_core::linalg::{self, c, from_real_diagonal as diag, CMatrix};
use bgc_core::sampling::{complex_gaussian, random_channel};
use bgc_core::{decompose, ChannelKind, GaussianChannel, GaussianState, Tolerances};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KINDS: [ChannelKind; 2] = [ChannelKind::Covariant, ChannelKind::Contravariant];

fn random_state(s: usize, rng: &mut ChaCha8Rng) -> GaussianState {
    let g = complex_gaussian(s, s, 1.0, rng);
    let alpha = linalg::hermitian_part(&(&g * g.adjoint())) + linalg::identity(s) * c(0.5);
    GaussianState::new(alpha).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn concatenation_stays_valid(seed in any::<u64>(), a in 1usize..4, b in 1usize..4, m in 1usize..4,
                                 k1 in 0usize..2, k2 in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = random_channel(KINDS[k1], a, b, &mut rng);
        let second = random_channel(KINDS[k2], b, m, &mut rng);
        let joint = GaussianChannel::concatenate(&second, &first).unwrap();
        prop_assert_eq!(joint.kind(), KINDS[k2].compose(KINDS[k1]));
        prop_assert!(joint.inequality_margin() > -1e-9);
    }

    #[test]
    fn concatenation_matches_sequential_application(seed in any::<u64>(), k1 in 0usize..2, k2 in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = rng.random_range(1..=3);
        let first = random_channel(KINDS[k1], s, s, &mut rng);
        let second = random_channel(KINDS[k2], s, s, &mut rng);
        let state = random_state(s, &mut rng);
        let joint = GaussianChannel::concatenate(&second, &first).unwrap();
        let direct = joint.apply(&state).unwrap();
        let stepwise = second.apply(&first.apply(&state).unwrap()).unwrap();
        prop_assert!(linalg::max_abs_diff(direct.alpha(), stepwise.alpha()) < 1e-10);
    }

    #[test]
    fn outputs_stay_above_vacuum(seed in any::<u64>(), k in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let ch = random_channel(KINDS[k], a, b, &mut rng);
        let out = ch.apply(&random_state(a, &mut rng)).unwrap();
        prop_assert!(linalg::min_eigenvalue(&out.excess_over_vacuum()) > -1e-8);
    }
}

#[test]
fn decomposition_roundtrip_on_random_channels() {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let kind = KINDS[i % 2];
        let (a, b) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let ch = random_channel(kind, a, b, &mut rng);
        let parts = decompose(&ch).unwrap();
        assert!(parts.stages_are_quantum_limited(&tol), "channel {i}");
        let back = parts.recompose().unwrap();
        assert_eq!(back.kind(), kind);
        worst = worst
            .max(linalg::max_abs_diff(back.k(), ch.k()))
            .max(linalg::max_abs_diff(back.mu(), ch.mu()));
    }
    assert!(worst <= 1e-10, "worst roundtrip error {worst:e}");
}

#[test]
fn attenuator_keeps_vacuum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for s in 1..=4 {
        let k = complex_gaussian(s, s, 0.4, &mut rng);
        let k = &k * c(0.9 / linalg::max_eigenvalue(&(&k * k.adjoint())).sqrt().max(1.0));
        let att = GaussianChannel::quantum_limited_attenuator(k).unwrap();
        let out = att.apply(&GaussianState::vacuum(s)).unwrap();
        assert!(linalg::max_abs_diff(out.alpha(), GaussianState::vacuum(s).alpha()) < 1e-12);
    }
}

#[test]
fn entanglement_breaking_scan() {
    for i in 0..=40 {
        let k = 0.1 * i as f64;
        let contra = GaussianChannel::quantum_limited_contravariant(diag(&[k, 0.5 * k])).unwrap();
        assert!(contra.is_entanglement_breaking(), "contravariant k = {k}");
        let gain = 1.0 + 0.05 * (i + 1) as f64;
        let amp = GaussianChannel::quantum_limited_amplifier(diag(&[gain, 1.0])).unwrap();
        assert!(!amp.is_entanglement_breaking(), "amplifier gain = {gain}");
    }
}

#[test]
fn amplifier_complement_has_expected_parameters() {
    let amp = GaussianChannel::quantum_limited_amplifier(diag(&[2f64.sqrt(), 5f64.sqrt()])).unwrap();
    let comp = amp.complementary_of_amplifier().unwrap();
    assert_eq!(comp.kind(), ChannelKind::Contravariant);
    assert!(linalg::max_abs_diff(comp.k(), &diag(&[1.0, 2.0])) < 1e-12);
    assert!(linalg::max_abs_diff(comp.mu(), &diag(&[1.0, 2.5])) < 1e-12);
}

#[test]
fn diagonal_form_reconstructs_random_quantum_limited_channels() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..30 {
        let s = rng.random_range(1..=4);
        let k: CMatrix = complex_gaussian(s, s, 1.0, &mut rng);
        let contra = GaussianChannel::quantum_limited_contravariant(k.clone()).unwrap();
        let form = bgc_core::diagonalize(&contra).unwrap();
        assert!(linalg::is_unitary(&form.v_a, 1e-10) && linalg::is_unitary(&form.v_b, 1e-10));
        assert!(linalg::max_abs_diff(&form.reconstruct(), &k) < 1e-10);
    }
}
