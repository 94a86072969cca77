use bgc_core::linalg::{self, c, from_real_diagonal as diag, CMatrix};
use bgc_core::sampling::{random_channel, random_commuting_instance, random_psd};
use bgc_core::{
    additive_capacity, amplifier_capacity, constrained_capacity, g, min_output_entropy, thermal_capacity,
    waterfilling_commuting, CapacityObjective, ChannelKind, EnergyConstraint, GaussianChannel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn one_mode_constraint(energy: f64) -> EnergyConstraint {
    EnergyConstraint::photon_number(1, energy).unwrap()
}

/// A random point of `{ν ⪰ 0, tr νε ≤ E}`.
fn random_feasible(constraint: &EnergyConstraint, rng: &mut ChaCha8Rng) -> CMatrix {
    let s = constraint.modes();
    let raw = random_psd(s, rng.random_range(1..=s), 1.0, rng);
    let used = constraint.energy_of(&raw);
    raw * c(constraint.energy() * rng.random_range(0.05..1.0) / used)
}

#[test]
fn optimizer_reproduces_one_mode_closed_forms() {
    let mut worst: f64 = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            let energy = 0.25 + 1.5 * j as f64;
            let cons = one_mode_constraint(energy);

            let eta = 0.1 + 0.2 * i as f64;
            let noise = 0.5 * j as f64;
            let ch = GaussianChannel::thermal_noise(eta, noise).unwrap();
            let got = constrained_capacity(&ch, &cons).unwrap().value;
            worst = worst.max((got - thermal_capacity(eta, noise, energy).unwrap()).abs());

            let noise = 0.3 * i as f64;
            let ch = GaussianChannel::additive_noise(noise).unwrap();
            let got = constrained_capacity(&ch, &cons).unwrap().value;
            worst = worst.max((got - additive_capacity(noise, energy).unwrap()).abs());

            let kappa = 1.0 + 0.5 * i as f64;
            let noise = 0.4 * j as f64;
            let ch = GaussianChannel::noisy_amplifier(kappa, noise).unwrap();
            let got = constrained_capacity(&ch, &cons).unwrap().value;
            worst = worst.max((got - amplifier_capacity(kappa, noise, energy).unwrap()).abs());
        }
    }
    assert!(worst <= 1e-6, "worst deviation {worst:e}");
}

#[test]
fn objective_is_concave_on_the_feasible_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let s = rng.random_range(1..=3);
        let ch = random_channel(ChannelKind::Covariant, s, rng.random_range(1..=3), &mut rng);
        let cons = EnergyConstraint::new(random_psd(s, s, 1.0, &mut rng) + linalg::identity(s) * c(0.2), 3.0).unwrap();
        let f = CapacityObjective::new(&ch);
        let (a, b) = (random_feasible(&cons, &mut rng), random_feasible(&cons, &mut rng));
        let t: f64 = rng.random();
        let mid = &a * c(t) + &b * c(1.0 - t);
        assert!(f.value(&mid) >= t * f.value(&a) + (1.0 - t) * f.value(&b) - 1e-9);
    }
}

#[test]
fn gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let h = 1e-5;
    for _ in 0..50 {
        let s = rng.random_range(1..=3);
        let kind = if rng.random() { ChannelKind::Covariant } else { ChannelKind::Contravariant };
        let ch = random_channel(kind, s, s, &mut rng);
        let f = CapacityObjective::new(&ch);
        let nu = random_psd(s, s, 1.0, &mut rng) + linalg::identity(s) * c(0.1);
        let grad = f.gradient(&nu);
        let dir = linalg::hermitian_part(&bgc_core::sampling::complex_gaussian(s, s, 1.0, &mut rng));
        let fd = (f.value(&(&nu + &dir * c(h))) - f.value(&(&nu - &dir * c(h)))) / (2.0 * h);
        let analytic = linalg::inner(&grad, &dir);
        assert!((fd - analytic).abs() <= 1e-4 * analytic.abs().max(1e-8), "fd {fd} vs {analytic}");
    }
}

#[test]
fn waterfilling_agrees_with_general_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let s = rng.random_range(1..=4);
        let (ch, cons) = random_commuting_instance(s, rng.random_range(0.5..5.0), &mut rng);
        let wf = waterfilling_commuting(&ch, &cons).unwrap();
        let pg = constrained_capacity(&ch, &cons).unwrap();
        assert!((wf.value - pg.value).abs() <= 1e-6, "{} vs {}", wf.value, pg.value);
        for r in [&wf, &pg] {
            assert!((cons.energy_of(&r.optimal_nu) - cons.energy()).abs() <= 1e-8);
            assert!(linalg::min_eigenvalue(&r.optimal_nu) >= -1e-8);
        }
    }
}

#[test]
fn budget_is_saturated_on_random_channels() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..20 {
        let s = rng.random_range(1..=3);
        let ch = random_channel(ChannelKind::Covariant, s, rng.random_range(1..=3), &mut rng);
        let cons = EnergyConstraint::new(random_psd(s, s, 1.0, &mut rng) + linalg::identity(s), 2.0).unwrap();
        let r = constrained_capacity(&ch, &cons).unwrap();
        assert!(r.converged);
        assert!((cons.energy_of(&r.optimal_nu) - 2.0).abs() <= 1e-8);
    }
}

#[test]
fn capacity_is_monotone_in_energy() {
    let ch = GaussianChannel::new(
        ChannelKind::Covariant,
        diag(&[0.9, 1.3]),
        diag(&[0.4, 0.8]),
    )
    .unwrap();
    let mut last = 0.0;
    for i in 0..12 {
        let cons = EnergyConstraint::new(diag(&[1.0, 2.0]), 0.5 * i as f64).unwrap();
        let v = constrained_capacity(&ch, &cons).unwrap().value;
        assert!(v >= last - 1e-9);
        last = v;
    }
}

#[test]
fn minimal_entropy_is_monotone_in_noise() {
    let mut last = [0.0; 3];
    for i in 0..20 {
        let n = 0.25 * i as f64;
        let now = [
            min_output_entropy(&GaussianChannel::thermal_noise(0.6, n).unwrap()).unwrap(),
            min_output_entropy(&GaussianChannel::additive_noise(n).unwrap()).unwrap(),
            min_output_entropy(&GaussianChannel::noisy_amplifier(1.7, n).unwrap()).unwrap(),
        ];
        for (a, b) in now.iter().zip(last) {
            assert!(*a >= b - 1e-12);
        }
        last = now;
    }
}

#[test]
fn thermal_capacity_never_exceeds_output_entropy_bound() {
    for i in 0..=10 {
        for j in 0..=10 {
            let (eta, n, e) = (0.1 * i as f64, 0.3 * j as f64, 1.7);
            let cap = thermal_capacity(eta, n, e).unwrap();
            assert!(cap <= g(eta * e + (1.0 - eta) * n).unwrap() + 1e-15);
        }
    }
}

#[test]
fn contravariant_capacity_matches_its_one_mode_formula() {
    // Contravariant K = k, μ = (1 + k²)/2: output excess k²ν + k², floor k².
    let k = 0.8_f64;
    let ch = GaussianChannel::quantum_limited_contravariant(diag(&[k])).unwrap();
    let r = constrained_capacity(&ch, &one_mode_constraint(1.5)).unwrap();
    let expected = g(k * k * 1.5 + k * k).unwrap() - g(k * k).unwrap();
    assert!((r.value - expected).abs() < 1e-9);
}
