//! Closed-form capacities of the one-mode channel families and the Shannon
//! baseline. All return nats unless a base is passed explicitly.

use crate::entropy::{g, LogBase};
use crate::error::{Error, Result};

fn require(name: &'static str, value: f64, ok: bool, range: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value, range })
    }
}

/// Thermal-noise channel: `g(ηE + (1−η)N) − g((1−η)N)`.
pub fn thermal_capacity(eta: f64, noise: f64, energy: f64) -> Result<f64> {
    require("eta", eta, (0.0..=1.0).contains(&eta), "[0, 1]")?;
    require("N", noise, noise >= 0.0, ">= 0")?;
    require("E", energy, energy >= 0.0, ">= 0")?;
    let floor = (1.0 - eta) * noise;
    Ok(g(eta * energy + floor)? - g(floor)?)
}

/// Additive classical noise channel: `g(E + N) − g(N)`.
pub fn additive_capacity(noise: f64, energy: f64) -> Result<f64> {
    require("N", noise, noise >= 0.0, ">= 0")?;
    require("E", energy, energy >= 0.0, ">= 0")?;
    Ok(g(energy + noise)? - g(noise)?)
}

/// Noisy amplifier: `g(κE + (κ−1)(N+1)) − g((κ−1)(N+1))`.
pub fn amplifier_capacity(kappa: f64, noise: f64, energy: f64) -> Result<f64> {
    require("kappa", kappa, kappa >= 1.0, ">= 1")?;
    require("N", noise, noise >= 0.0, ">= 0")?;
    require("E", energy, energy >= 0.0, ">= 0")?;
    let floor = (kappa - 1.0) * (noise + 1.0);
    Ok(g(kappa * energy + floor)? - g(floor)?)
}

/// Classical band-limited Gaussian channel, `½ log(1 + E/N)`.
pub fn shannon_capacity(energy: f64, noise: f64, base: LogBase) -> Result<f64> {
    require("E", energy, energy >= 0.0, ">= 0")?;
    if !(noise > 0.0) {
        return Err(Error::ZeroNoise);
    }
    Ok(base.from_nats(0.5 * (energy / noise).ln_1p()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_limits_reduce_to_g_of_energy() {
        for e in [0.0, 0.5, 3.0] {
            let ge = g(e).unwrap();
            assert!((thermal_capacity(1.0, 2.0, e).unwrap() - ge).abs() < 1e-14);
            assert!((additive_capacity(0.0, e).unwrap() - ge).abs() < 1e-14);
            assert!((amplifier_capacity(1.0, 7.0, e).unwrap() - ge).abs() < 1e-14);
        }
    }

    #[test]
    fn thermal_is_bounded_by_first_term() {
        let (eta, n, e) = (0.4, 1.3, 2.2);
        let cap = thermal_capacity(eta, n, e).unwrap();
        assert!(cap <= g(eta * e + (1.0 - eta) * n).unwrap());
    }

    #[test]
    fn shannon_reference_values() {
        assert_eq!(shannon_capacity(1.0, 1.0, LogBase::Bits).unwrap(), 0.5);
        assert_eq!(shannon_capacity(0.0, 2.0, LogBase::Nats).unwrap(), 0.0);
        assert!((shannon_capacity(3.0, 1.0, LogBase::Bits).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(shannon_capacity(1.0, 0.0, LogBase::Bits), Err(Error::ZeroNoise));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(thermal_capacity(1.5, 0.0, 1.0), Err(Error::ParameterOutOfRange { name: "eta", .. })));
        assert!(matches!(amplifier_capacity(0.9, 0.0, 1.0), Err(Error::ParameterOutOfRange { name: "kappa", .. })));
        assert!(matches!(additive_capacity(-0.1, 1.0), Err(Error::ParameterOutOfRange { name: "N", .. })));
        assert!(matches!(additive_capacity(0.1, -1.0), Err(Error::ParameterOutOfRange { name: "E", .. })));
    }
}
