//! Seeded random pure states on a low-energy subspace.
//!
//! Draw `i` of a scan uses ChaCha8 keyed by the seed on stream `i`, so draws
//! are independent of evaluation order and of how a scan is split across
//! threads.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{FockError, Result};
use crate::ops::CVector;

/// Number of levels `m = ⌊cap⌋ + 1`: any state on levels `0..m` has
/// `⟨N⟩ ≤ m − 1 ≤ cap`.
pub fn support_levels(mean_energy_cap: f64) -> usize {
    mean_energy_cap.max(0.0).floor() as usize + 1
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Haar-random unit vector on the first `support_levels(cap)` of `d` levels.
pub fn random_pure_state(d: usize, mean_energy_cap: f64, seed: u64) -> Result<CVector> {
    random_pure_state_indexed(d, mean_energy_cap, seed, 0)
}

pub fn random_pure_state_indexed(d: usize, mean_energy_cap: f64, seed: u64, index: u64) -> Result<CVector> {
    let m = support_levels(mean_energy_cap);
    if !(mean_energy_cap >= 0.0) {
        return Err(FockError::ParameterOutOfRange {
            name: "mean_energy_cap",
            value: mean_energy_cap,
            range: ">= 0",
        });
    }
    if m > d {
        return Err(FockError::DimensionTooSmall { dim: d, min: m });
    }
    let mut rng = rng_for(seed, index);
    let mut v = DVector::from_element(d, Complex64::new(0.0, 0.0));
    for n in 0..m {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        v[n] = Complex64::new(re, im);
    }
    let norm = v.norm();
    Ok(v / Complex64::new(norm, 0.0))
}
