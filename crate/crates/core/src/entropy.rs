//! The g-function and entropies of Gaussian states and channel outputs.
//!
//! All values are in nats; [`LogBase`] converts at the boundary.

use serde::{Deserialize, Serialize};

use crate::channel::GaussianChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::state::GaussianState;
use crate::tolerance::Tolerances;

/// Below this argument `g` is reported as exactly zero.
pub const G_ZERO_CUTOFF: f64 = 1e-30;
/// Floor applied to the argument of `g′`, which diverges at zero.
pub const G_PRIME_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Nats,
    Bits,
}

impl LogBase {
    /// Converts a quantity measured in nats into this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Nats => nats,
            LogBase::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

/// `g(x) = (x+1) log(x+1) − x log x`, the entropy of a thermal state with
/// mean photon number `x`.
pub fn g(x: f64) -> Result<f64> {
    if x < 0.0 || x.is_nan() {
        return Err(Error::NegativeArgument(x));
    }
    Ok(g_unchecked(x))
}

pub(crate) fn g_unchecked(x: f64) -> f64 {
    if x < G_ZERO_CUTOFF {
        0.0
    } else {
        x * (1.0 / x).ln_1p() + x.ln_1p()
    }
}

/// `g′(x) = log((x+1)/x)`, with the argument floored at [`G_PRIME_FLOOR`].
pub fn g_prime(x: f64) -> f64 {
    (1.0 / x.max(G_PRIME_FLOOR)).ln_1p()
}

/// `tr g(H)` for Hermitian `H ⪰ 0`. Eigenvalues in `[−psd_tol, 0)` are
/// treated as zero.
pub fn trace_g(h: &CMatrix, psd_tol: f64) -> Result<f64> {
    linalg::eigvalsh(h).iter().try_fold(0.0, |acc, &x| {
        if x < -psd_tol {
            Err(Error::NegativeArgument(x))
        } else {
            Ok(acc + g_unchecked(x.max(0.0)))
        }
    })
}

/// `S(ρ) = tr g(α − I/2)`.
pub fn gaussian_entropy(state: &GaussianState) -> f64 {
    // α − I/2 ⪰ −τ_psd is a state invariant.
    trace_g(&state.excess_over_vacuum(), f64::INFINITY).unwrap_or(f64::NAN)
}

/// Minimal output entropy of one use, `tr g(μ + (KK* − I)/2)`, attained on
/// the vacuum. The same formula holds for both kinds since the vacuum output
/// covariance is `KK*/2 + μ` either way.
pub fn min_output_entropy(channel: &GaussianChannel) -> Result<f64> {
    min_output_entropy_with(channel, &Tolerances::default())
}

pub fn min_output_entropy_with(channel: &GaussianChannel, tol: &Tolerances) -> Result<f64> {
    let margin = channel.inequality_margin();
    if margin < -tol.psd {
        return Err(Error::InvalidChannel(format!("inequality margin {margin:.3e}")));
    }
    trace_g(&channel.vacuum_output_excess(), tol.psd)
        .map_err(|e| Error::InvalidChannel(format!("vacuum output below vacuum: {e}")))
}
