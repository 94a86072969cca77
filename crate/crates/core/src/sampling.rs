//! Random valid channels, states and commuting capacity instances for
//! property tests and verification scans. Callers own the RNG.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::capacity::EnergyConstraint;
use crate::channel::{ChannelKind, GaussianChannel};
use crate::linalg::{self, c, CMatrix};

/// Matrix with i.i.d. complex Gaussian entries of variance `scale²`.
pub fn complex_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, scale: f64, rng: &mut R) -> CMatrix {
    let s = scale / 2f64.sqrt();
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(s * re, s * im)
    })
}

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = complex_gaussian(n, n, 1.0, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0) };
        let mut col = u.column_mut(j);
        col *= phase;
    }
    u
}

/// Random PSD matrix `G G*` with `G` of size `n × rank`.
pub fn random_psd<R: Rng + ?Sized>(n: usize, rank: usize, scale: f64, rng: &mut R) -> CMatrix {
    if rank == 0 {
        return CMatrix::zeros(n, n);
    }
    let g = complex_gaussian(n, rank, scale, rng);
    linalg::hermitian_part(&(&g * g.adjoint()))
}

/// A random valid channel. The noise is the minimal admissible `μ` plus a
/// random PSD excess of random rank, so quantum-limited channels and
/// rank-deficient excesses both occur.
pub fn random_channel<R: Rng + ?Sized>(kind: ChannelKind, s_a: usize, s_b: usize, rng: &mut R) -> GaussianChannel {
    let scale = rng.random_range(0.2..1.8) / (s_a as f64).sqrt();
    let k = complex_gaussian(s_b, s_a, scale, rng);
    let eye = linalg::identity(s_b);
    let kk = &k * k.adjoint();
    let minimal = match kind {
        ChannelKind::Covariant => linalg::hermitian_function(&(&eye - &kk), f64::abs) * c(0.5),
        ChannelKind::Contravariant => (&eye + &kk) * c(0.5),
    };
    let rank = rng.random_range(0..=s_b);
    let excess = random_psd(s_b, rank, rng.random_range(0.1..1.0), rng);
    let mu = linalg::hermitian_part(&(minimal + excess));
    GaussianChannel::new(kind, k, mu).expect("minimal noise plus PSD excess is valid")
}

/// A random square channel and energy matrix sharing one eigenbasis.
pub fn random_commuting_instance<R: Rng + ?Sized>(s: usize, energy: f64, rng: &mut R) -> (GaussianChannel, EnergyConstraint) {
    let u = haar_unitary(s, rng);
    let mut k_diag = Vec::with_capacity(s);
    let mut mu_diag = Vec::with_capacity(s);
    let mut eps_diag = Vec::with_capacity(s);
    for _ in 0..s {
        let modulus: f64 = rng.random_range(0.3..2.0);
        let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let k = Complex64::from_polar(modulus, phase);
        let minimal = (1.0 - modulus * modulus).abs() / 2.0;
        k_diag.push(k);
        mu_diag.push(minimal + rng.random_range(0.0..1.5));
        eps_diag.push(rng.random_range(0.5..2.0));
    }
    let conjugate = |d: CMatrix| linalg::hermitian_part(&(&u * d * u.adjoint()));
    let k = &u * CMatrix::from_diagonal(&nalgebra::DVector::from_vec(k_diag)) * u.adjoint();
    let mu = conjugate(linalg::from_real_diagonal(&mu_diag));
    let eps = conjugate(linalg::from_real_diagonal(&eps_diag));
    let channel = GaussianChannel::new(ChannelKind::Covariant, k, mu).expect("valid by construction");
    let constraint = EnergyConstraint::new(eps, energy).expect("positive definite by construction");
    (channel, constraint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..5 {
            assert!(linalg::is_unitary(&haar_unitary(n, &mut rng), 1e-12));
        }
    }

    #[test]
    fn random_channels_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            for kind in [ChannelKind::Covariant, ChannelKind::Contravariant] {
                let (a, b) = (rng.random_range(1..=4), rng.random_range(1..=4));
                let ch = random_channel(kind, a, b, &mut rng);
                assert!(ch.inequality_margin() > -1e-12);
            }
        }
    }
}
