//! Quantum-limited decomposition and diagonal (singular value) form.

use crate::channel::{ChannelKind, GaussianChannel};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};
use crate::tolerance::Tolerances;

/// `channel = second_stage ∘ attenuator`, where the attenuator is
/// quantum-limited and the second stage is a quantum-limited amplifier
/// (covariant source) or quantum-limited contravariant channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDecomposition {
    pub attenuator: GaussianChannel,
    pub second_stage: GaussianChannel,
}

impl ChannelDecomposition {
    pub fn recompose(&self) -> Result<GaussianChannel> {
        GaussianChannel::concatenate(&self.second_stage, &self.attenuator)
    }

    /// Checks that both stages are quantum-limited of the advertised type.
    pub fn stages_are_quantum_limited(&self, tol: &Tolerances) -> bool {
        let att = &self.attenuator;
        let n = att.output_modes();
        let kk1 = att.kk_adjoint();
        let att_ok = att.kind() == ChannelKind::Covariant
            && linalg::max_eigenvalue(&kk1) <= 1.0 + tol.psd
            && linalg::max_abs_diff(att.mu(), &((linalg::identity(n) - kk1) * c(0.5))) <= tol.eq;
        let second_ok = match self.second_stage.kind() {
            ChannelKind::Covariant => self.second_stage.is_quantum_limited_amplifier(tol),
            ChannelKind::Contravariant => self.second_stage.is_quantum_limited(tol),
        };
        att_ok && second_ok
    }
}

pub fn decompose(channel: &GaussianChannel) -> Result<ChannelDecomposition> {
    decompose_with(channel, &Tolerances::default())
}

/// Splits a channel into a quantum-limited attenuator followed by a
/// quantum-limited second stage with Hermitian `K₂ = |K₂*|`.
///
/// Covariant: `K₂² = μ + (KK* + I)/2`, `K₁ = K₂⁻ K`.
/// Contravariant: `K₂² = μ + (KK* − I)/2`, `K₁ = conj(K₂⁻ K)`.
///
/// Both `K₂²` are `KK* + E` with `E` the (PSD) slack of the validity
/// inequality, so `K₂` and `K₂⁻K` are read off the polar decomposition of
/// `B = [K | E^½]`. This keeps `K₁K₁* ⪯ I` to rounding even when `K₂` is
/// singular.
pub fn decompose_with(channel: &GaussianChannel, tol: &Tolerances) -> Result<ChannelDecomposition> {
    let margin = channel.inequality_margin();
    if margin < -tol.psd {
        return Err(Error::InvalidChannel(format!("inequality margin {margin:.3e}")));
    }
    let n = channel.output_modes();
    let m = channel.input_modes();
    let eye = linalg::identity(n);
    let kk = channel.kk_adjoint();
    let k = channel.k();
    let kind = channel.kind();

    let slack = match kind {
        ChannelKind::Covariant => channel.mu() - (&kk - &eye) * c(0.5),
        ChannelKind::Contravariant => channel.mu() - (&kk + &eye) * c(0.5),
    };
    let mut b = CMatrix::zeros(n, m + n);
    b.view_mut((0, 0), (n, m)).copy_from(k);
    b.view_mut((0, m), (n, n)).copy_from(&linalg::sqrt_psd(&linalg::hermitian_part(&slack)));

    let svd = b.svd(true, true);
    let (u, v_t) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    let sigma = &svd.singular_values;
    let cut = tol.sigma_cut * sigma.iter().copied().fold(0.0, f64::max);
    let mut k2 = CMatrix::zeros(n, n);
    let mut polar = CMatrix::zeros(n, m);
    for j in 0..sigma.len() {
        let uj = u.column(j);
        k2 += uj * uj.adjoint() * c(sigma[j]);
        if sigma[j] > cut {
            polar += uj * v_t.view((j, 0), (1, m));
        }
    }
    let k2 = linalg::hermitian_part(&k2);
    let k1 = match kind {
        ChannelKind::Covariant => polar,
        ChannelKind::Contravariant => linalg::conj(&polar),
    };

    let mu1 = linalg::hermitian_part(&((&eye - &k1 * k1.adjoint()) * c(0.5)));
    let k2k2 = &k2 * k2.adjoint();
    let mu2 = match kind {
        ChannelKind::Covariant => (&k2k2 - &eye) * c(0.5),
        ChannelKind::Contravariant => (&k2k2 + &eye) * c(0.5),
    };

    let attenuator = GaussianChannel::with_tolerances(ChannelKind::Covariant, k1, mu1, tol)?;
    let second_stage = GaussianChannel::with_tolerances(kind, k2, linalg::hermitian_part(&mu2), tol)?;
    Ok(ChannelDecomposition { attenuator, second_stage })
}

/// `K = V_B K_c V_A` with unitary `V_A`, `V_B` and rectangular-diagonal `K_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalForm {
    pub v_a: CMatrix,
    pub v_b: CMatrix,
    pub singular_values: Vec<f64>,
}

impl DiagonalForm {
    /// The rectangular diagonal matrix `K_c`.
    pub fn k_c(&self) -> CMatrix {
        let mut kc = CMatrix::zeros(self.v_b.nrows(), self.v_a.nrows());
        for (j, &s) in self.singular_values.iter().enumerate() {
            kc[(j, j)] = c(s);
        }
        kc
    }

    pub fn reconstruct(&self) -> CMatrix {
        &self.v_b * self.k_c() * &self.v_a
    }
}

pub fn diagonalize(channel: &GaussianChannel) -> Result<DiagonalForm> {
    diagonalize_with(channel, &Tolerances::default())
}

/// Singular value form of a quantum-limited channel, for which `μ` is a
/// function of `KK*` and is diagonalized by the same `V_B`.
pub fn diagonalize_with(channel: &GaussianChannel, tol: &Tolerances) -> Result<DiagonalForm> {
    if !channel.is_quantum_limited(tol) {
        return Err(Error::NotQuantumLimited);
    }
    let k = channel.k();
    let (s_b, s_a) = k.shape();
    let r = s_a.min(s_b);

    if linalg::is_diagonal(k, 0.0) {
        let mut v_b = linalg::identity(s_b);
        let mut singular_values = Vec::with_capacity(r);
        for j in 0..r {
            let z = k[(j, j)];
            let s = z.norm();
            if s > 0.0 {
                v_b[(j, j)] = z / s;
            }
            singular_values.push(s);
        }
        return Ok(DiagonalForm { v_a: linalg::identity(s_a), v_b, singular_values });
    }

    let svd = k.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let u_sorted = CMatrix::from_fn(s_b, r, |i, j| u[(i, order[j])]);
    let v_sorted = CMatrix::from_fn(s_a, r, |i, j| v_t[(order[j], i)].conj());
    let v_b = linalg::complete_unitary(&u_sorted);
    let v_a = linalg::complete_unitary(&v_sorted).adjoint();
    let singular_values = order.iter().map(|&i| svd.singular_values[i]).collect();
    Ok(DiagonalForm { v_a, v_b, singular_values })
}
