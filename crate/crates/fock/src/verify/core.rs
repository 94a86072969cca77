//! Checks of the matrix-level library that need no Fock cutoff.

use bgc_core::linalg::{self, c, from_real_diagonal as diag};
use bgc_core::sampling::{complex_gaussian, random_channel, random_commuting_instance, random_psd};
use bgc_core::{
    additive_capacity, amplifier_capacity, constrained_capacity, decompose, shannon_capacity, thermal_capacity,
    waterfilling_commuting, CapacityObjective, ChannelKind, EnergyConstraint, GaussianChannel, LogBase, Tolerances,
};
use rand::Rng;
use serde_json::json;

use crate::report::{max_of, Report};
use crate::sampling::rng_for;

/// Optimizer against the three one-mode closed forms on a 5 × 5 grid each.
pub fn closed_form_grid() -> Vec<Report> {
    let families = ["thermal_noise", "additive_noise", "noisy_amplifier"];
    families
        .iter()
        .map(|&family| {
            let mut worst: f64 = 0.0;
            let mut failure = None;
            for i in 0..5 {
                for j in 0..5 {
                    let energy = 0.25 + 1.5 * j as f64;
                    let run = || -> bgc_core::Result<f64> {
                        let cons = EnergyConstraint::photon_number(1, energy)?;
                        let (ch, exact) = match family {
                            "thermal_noise" => {
                                let (eta, noise) = (0.1 + 0.2 * i as f64, 0.5 * j as f64);
                                (GaussianChannel::thermal_noise(eta, noise)?, thermal_capacity(eta, noise, energy)?)
                            }
                            "additive_noise" => {
                                let noise = 0.3 * i as f64;
                                (GaussianChannel::additive_noise(noise)?, additive_capacity(noise, energy)?)
                            }
                            _ => {
                                let (kappa, noise) = (1.0 + 0.5 * i as f64, 0.4 * j as f64);
                                (GaussianChannel::noisy_amplifier(kappa, noise)?, amplifier_capacity(kappa, noise, energy)?)
                            }
                        };
                        Ok((constrained_capacity(&ch, &cons)?.value - exact).abs())
                    };
                    match run() {
                        Ok(err) => worst = max_of([worst, err]),
                        Err(e) => failure = Some(e.to_string()),
                    }
                }
            }
            let params = json!({ "family": family, "grid": [5, 5], "unit": "nats" });
            match failure {
                Some(msg) => Report::errored("closed_form_capacity", params, msg),
                None => Report::at_most("closed_form_capacity", params, worst, 1e-6),
            }
        })
        .collect()
}

/// `shannon_capacity(E = N)` in bits; exact equality is required.
pub fn shannon_fixture() -> Report {
    let params = json!({ "energy": 1.0, "noise": 1.0, "unit": "bits" });
    match shannon_capacity(1.0, 1.0, LogBase::Bits) {
        Ok(v) => Report::at_most("shannon_half_bit", params, (v - 0.5).abs(), 0.0),
        Err(e) => Report::errored("shannon_half_bit", params, e.to_string()),
    }
}

/// Decompose and re-concatenate random channels of both kinds with up to
/// four modes. Returns the roundtrip error and the count of stages that are
/// not quantum-limited.
pub fn decomposition_roundtrip(count: usize, seed: u64) -> Vec<Report> {
    let tol = Tolerances::default();
    let kinds = [ChannelKind::Covariant, ChannelKind::Contravariant];
    let mut rng = rng_for(seed, 0);
    let mut worst: f64 = 0.0;
    let mut uncertified = 0usize;
    let mut failure = None;
    for i in 0..count {
        let (a, b) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let ch = random_channel(kinds[i % 2], a, b, &mut rng);
        let result = decompose(&ch).and_then(|parts| {
            if !parts.stages_are_quantum_limited(&tol) {
                uncertified += 1;
            }
            parts.recompose()
        });
        match result {
            Ok(back) if back.kind() == ch.kind() => {
                worst = max_of([worst, linalg::max_abs_diff(back.k(), ch.k()), linalg::max_abs_diff(back.mu(), ch.mu())]);
            }
            Ok(_) => failure = Some(format!("channel {i} changed kind")),
            Err(e) => failure = Some(format!("channel {i}: {e}")),
        }
    }
    let params = json!({ "channels": count, "seed": seed, "max_modes": 4 });
    if let Some(msg) = failure {
        return vec![Report::errored("decomposition_roundtrip", params, msg)];
    }
    vec![
        Report::at_most("decomposition_roundtrip", params.clone(), worst, 1e-10),
        Report::at_most("decomposition_stage_certificates", params, uncertified as f64, 0.0),
    ]
}

/// Quantum-limited contravariant channels are entanglement breaking and
/// quantum-limited amplifiers with `K ≠ I` are not. Metric: misclassified
/// channels in the scan.
pub fn entanglement_breaking_scan() -> Report {
    let mut wrong = 0usize;
    let mut scanned = 0usize;
    for i in 0..=40 {
        let k = 0.1 * i as f64;
        for kd in [vec![k], vec![k, 0.5 * k], vec![k, 1.0, 0.3]] {
            if let Ok(ch) = GaussianChannel::quantum_limited_contravariant(diag(&kd)) {
                scanned += 1;
                wrong += usize::from(!ch.is_entanglement_breaking());
            }
        }
        let gain = 1.0 + 0.05 * (i + 1) as f64;
        for kd in [vec![gain], vec![gain, 1.0], vec![1.0, 1.0, gain]] {
            if let Ok(ch) = GaussianChannel::quantum_limited_amplifier(diag(&kd)) {
                scanned += 1;
                wrong += usize::from(ch.is_entanglement_breaking());
            }
        }
    }
    Report::at_most("entanglement_breaking_scan", json!({ "channels": scanned }), wrong as f64, 0.0)
}

/// Water-filling against the general solver on commuting instances.
pub fn waterfilling_crosscheck(count: usize, seed: u64) -> Vec<Report> {
    let mut rng = rng_for(seed, 1);
    let mut agreement: f64 = 0.0;
    let mut saturation: f64 = 0.0;
    let params = json!({ "instances": count, "seed": seed, "max_modes": 4 });
    for i in 0..count {
        let s = rng.random_range(1..=4);
        let (ch, cons) = random_commuting_instance(s, rng.random_range(0.5..5.0), &mut rng);
        let (wf, pg) = match (waterfilling_commuting(&ch, &cons), constrained_capacity(&ch, &cons)) {
            (Ok(wf), Ok(pg)) => (wf, pg),
            (Err(e), _) | (_, Err(e)) => {
                return vec![Report::errored("waterfilling_agreement", params, format!("instance {i}: {e}"))]
            }
        };
        agreement = max_of([agreement, (wf.value - pg.value).abs()]);
        for r in [&wf, &pg] {
            saturation = max_of([saturation, (cons.energy_of(&r.optimal_nu) - cons.energy()).abs()]);
        }
    }
    vec![
        Report::at_most("waterfilling_agreement", params.clone(), agreement, 1e-6),
        Report::at_most("waterfilling_budget_saturation", params, saturation, 1e-8),
    ]
}

/// Objective gradient against central differences along random Hermitian
/// directions at interior points.
pub fn gradient_check(points: usize, seed: u64) -> Report {
    let mut rng = rng_for(seed, 2);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let s = rng.random_range(1..=3);
        let kind = if rng.random() { ChannelKind::Covariant } else { ChannelKind::Contravariant };
        let ch = random_channel(kind, s, s, &mut rng);
        let f = CapacityObjective::new(&ch);
        let nu = random_psd(s, s, 1.0, &mut rng) + linalg::identity(s) * c(0.1);
        let dir = linalg::hermitian_part(&complex_gaussian(s, s, 1.0, &mut rng));
        let fd = (f.value(&(&nu + &dir * c(h))) - f.value(&(&nu - &dir * c(h)))) / (2.0 * h);
        let analytic = linalg::inner(&f.gradient(&nu), &dir);
        worst = max_of([worst, (fd - analytic).abs() / analytic.abs().max(1e-8)]);
    }
    Report::at_most(
        "gradient_finite_differences",
        json!({ "points": points, "seed": seed, "step": h }),
        worst,
        1e-4,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_core_checks_pass() {
        assert!(shannon_fixture().pass);
        assert!(entanglement_breaking_scan().pass);
        assert!(gradient_check(5, 1).pass);
        assert!(decomposition_roundtrip(10, 3).iter().all(|r| r.pass));
    }
}
