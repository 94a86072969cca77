//! Gauge-covariant and gauge-contravariant bosonic Gaussian channels.
//!
//! A channel is the pair `(K, μ)` together with its kind. Its adjoint acts on
//! displacement operators as
//!
//! ```text
//! covariant:      Φ*[D(z)] = D(K* z)  exp(−z* μ z)
//! contravariant:  Φ*[D(z)] = D(Kᵗ z̄)  exp(−z* μ z)
//! ```
//!
//! so on covariance operators the channel acts as `α ↦ K α K* + μ`, with `α`
//! replaced by its entrywise conjugate for the contravariant kind.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};
use crate::state::GaussianState;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Covariant,
    Contravariant,
}

impl ChannelKind {
    /// Kind of `second ∘ first`.
    pub fn compose(self, first: ChannelKind) -> ChannelKind {
        if self == first {
            ChannelKind::Covariant
        } else {
            ChannelKind::Contravariant
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassTag {
    Attenuator,
    Amplifier,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelClass {
    pub tag: ClassTag,
    pub quantum_limited: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    kind: ChannelKind,
    k: CMatrix,
    mu: CMatrix,
}

impl GaussianChannel {
    pub fn new(kind: ChannelKind, k: CMatrix, mu: CMatrix) -> Result<Self> {
        Self::with_tolerances(kind, k, mu, &Tolerances::default())
    }

    /// Validates shapes, Hermiticity of `μ` and the kind-appropriate
    /// inequality: `μ ≥ ±(I − KK*)/2` (covariant) or `μ ≥ (I + KK*)/2`
    /// (contravariant).
    pub fn with_tolerances(kind: ChannelKind, k: CMatrix, mu: CMatrix, tol: &Tolerances) -> Result<Self> {
        let (s_b, s_a) = k.shape();
        if s_a == 0 || s_b == 0 {
            return Err(Error::ShapeMismatch {
                name: "K",
                rows: s_b,
                cols: s_a,
                expected: "at least 1x1".into(),
            });
        }
        if mu.shape() != (s_b, s_b) {
            return Err(Error::ShapeMismatch {
                name: "mu",
                rows: mu.nrows(),
                cols: mu.ncols(),
                expected: format!("{s_b}x{s_b}"),
            });
        }
        let defect = linalg::hermiticity_defect(&mu);
        if defect > tol.herm {
            return Err(Error::NotHermitian { name: "mu", defect });
        }
        let mu = linalg::hermitian_part(&mu);
        let channel = Self { kind, k, mu };
        let min_eigenvalue = channel.inequality_margin();
        if min_eigenvalue < -tol.psd {
            return Err(Error::InequalityViolated { min_eigenvalue });
        }
        Ok(channel)
    }

    /// Smallest eigenvalue over the matrices that the validity inequality
    /// requires to be positive semidefinite.
    pub fn inequality_margin(&self) -> f64 {
        let half_i = linalg::identity(self.output_modes()) * c(0.5);
        let half_kk = self.kk_adjoint() * c(0.5);
        match self.kind {
            ChannelKind::Covariant => {
                let lower = linalg::min_eigenvalue(&(&self.mu - (&half_i - &half_kk)));
                let upper = linalg::min_eigenvalue(&(&self.mu + (&half_i - &half_kk)));
                lower.min(upper)
            }
            ChannelKind::Contravariant => linalg::min_eigenvalue(&(&self.mu - half_i - half_kk)),
        }
    }

    pub fn identity(modes: usize) -> Self {
        Self {
            kind: ChannelKind::Covariant,
            k: linalg::identity(modes),
            mu: CMatrix::zeros(modes, modes),
        }
    }

    /// Quantum-limited attenuator `μ = (I − KK*)/2`; requires `KK* ≤ I`.
    pub fn quantum_limited_attenuator(k: CMatrix) -> Result<Self> {
        let mu = (linalg::identity(k.nrows()) - &k * k.adjoint()) * c(0.5);
        Self::new(ChannelKind::Covariant, k, mu)
    }

    /// Quantum-limited amplifier `μ = (KK* − I)/2`; requires `KK* ≥ I`.
    pub fn quantum_limited_amplifier(k: CMatrix) -> Result<Self> {
        let mu = (&k * k.adjoint() - linalg::identity(k.nrows())) * c(0.5);
        Self::new(ChannelKind::Covariant, k, mu)
    }

    /// Quantum-limited contravariant channel `μ = (I + KK*)/2`.
    pub fn quantum_limited_contravariant(k: CMatrix) -> Result<Self> {
        let mu = (linalg::identity(k.nrows()) + &k * k.adjoint()) * c(0.5);
        Self::new(ChannelKind::Contravariant, k, mu)
    }

    /// One-mode thermal-noise channel: transmissivity `η`, environment photons `N`.
    pub fn thermal_noise(eta: f64, noise: f64) -> Result<Self> {
        check_range("eta", eta, (0.0..=1.0).contains(&eta), "[0, 1]")?;
        check_range("N", noise, noise >= 0.0, ">= 0")?;
        Self::new(
            ChannelKind::Covariant,
            linalg::from_real_diagonal(&[eta.sqrt()]),
            linalg::from_real_diagonal(&[(1.0 - eta) * (noise + 0.5)]),
        )
    }

    /// One-mode additive classical noise channel `K = 1, μ = N`.
    pub fn additive_noise(noise: f64) -> Result<Self> {
        check_range("N", noise, noise >= 0.0, ">= 0")?;
        Self::new(
            ChannelKind::Covariant,
            linalg::from_real_diagonal(&[1.0]),
            linalg::from_real_diagonal(&[noise]),
        )
    }

    /// One-mode noisy amplifier with gain `κ ≥ 1` and environment photons `N`.
    pub fn noisy_amplifier(kappa: f64, noise: f64) -> Result<Self> {
        check_range("kappa", kappa, kappa >= 1.0, ">= 1")?;
        check_range("N", noise, noise >= 0.0, ">= 0")?;
        Self::new(
            ChannelKind::Covariant,
            linalg::from_real_diagonal(&[kappa.sqrt()]),
            linalg::from_real_diagonal(&[(kappa - 1.0) * (noise + 0.5)]),
        )
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn k(&self) -> &CMatrix {
        &self.k
    }

    pub fn mu(&self) -> &CMatrix {
        &self.mu
    }

    pub fn input_modes(&self) -> usize {
        self.k.ncols()
    }

    pub fn output_modes(&self) -> usize {
        self.k.nrows()
    }

    pub fn kk_adjoint(&self) -> CMatrix {
        &self.k * self.k.adjoint()
    }

    /// `μ + (KK* − I)/2`: the output covariance of the vacuum minus `I/2`.
    pub fn vacuum_output_excess(&self) -> CMatrix {
        &self.mu + (self.kk_adjoint() - linalg::identity(self.output_modes())) * c(0.5)
    }

    /// The minimal noise matrix allowed for this `K` and kind, if the
    /// inequality has a least solution (attenuator, amplifier, contravariant).
    fn minimal_mu(&self, tol: &Tolerances) -> Option<CMatrix> {
        let n = self.output_modes();
        let kk = self.kk_adjoint();
        match self.kind {
            ChannelKind::Contravariant => Some((linalg::identity(n) + kk) * c(0.5)),
            ChannelKind::Covariant => {
                let eig = linalg::eigvalsh(&kk);
                if eig.iter().all(|&x| x <= 1.0 + tol.psd) {
                    Some((linalg::identity(n) - kk) * c(0.5))
                } else if eig.iter().all(|&x| x >= 1.0 - tol.psd) {
                    Some((kk - linalg::identity(n)) * c(0.5))
                } else {
                    None
                }
            }
        }
    }

    pub fn classify(&self) -> ChannelClass {
        self.classify_with(&Tolerances::default())
    }

    /// Attenuator/amplifier tag from the spectrum of `KK*`. When `KK* = I`
    /// both hold and the attenuator tag is reported.
    pub fn classify_with(&self, tol: &Tolerances) -> ChannelClass {
        let eig = linalg::eigvalsh(&self.kk_adjoint());
        let tag = if eig.iter().all(|&x| x <= 1.0 + tol.psd) {
            ClassTag::Attenuator
        } else if eig.iter().all(|&x| x >= 1.0 - tol.psd) {
            ClassTag::Amplifier
        } else {
            ClassTag::Neither
        };
        let quantum_limited = self
            .minimal_mu(tol)
            .is_some_and(|m| linalg::max_abs_diff(&m, &self.mu) <= tol.eq);
        ChannelClass { tag, quantum_limited }
    }

    pub fn is_quantum_limited(&self, tol: &Tolerances) -> bool {
        self.classify_with(tol).quantum_limited
    }

    pub fn is_quantum_limited_amplifier(&self, tol: &Tolerances) -> bool {
        if self.kind != ChannelKind::Covariant {
            return false;
        }
        let kk = self.kk_adjoint();
        let n = self.output_modes();
        linalg::min_eigenvalue(&kk) >= 1.0 - tol.psd
            && linalg::max_abs_diff(&((kk - linalg::identity(n)) * c(0.5)), &self.mu) <= tol.eq
    }

    /// `μ − (KK* + I)/2 ⪰ 0`. This is equivalent to the existence of a split
    /// `μ = μ₁ + μ₂` with `μ₁ ≥ KK*/2` and `μ₂ ≥ I/2`.
    pub fn is_entanglement_breaking(&self) -> bool {
        self.is_entanglement_breaking_with(&Tolerances::default())
    }

    pub fn is_entanglement_breaking_with(&self, tol: &Tolerances) -> bool {
        let n = self.output_modes();
        let gap = &self.mu - (self.kk_adjoint() + linalg::identity(n)) * c(0.5);
        linalg::min_eigenvalue(&gap) >= -tol.psd
    }

    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState> {
        self.apply_with(state, &Tolerances::default())
    }

    pub fn apply_with(&self, state: &GaussianState, tol: &Tolerances) -> Result<GaussianState> {
        if state.modes() != self.input_modes() {
            return Err(Error::ModeMismatch {
                expected: self.input_modes(),
                found: state.modes(),
            });
        }
        let alpha = match self.kind {
            ChannelKind::Covariant => state.alpha().clone(),
            ChannelKind::Contravariant => linalg::conj(state.alpha()),
        };
        let out = &self.k * alpha * self.k.adjoint() + &self.mu;
        GaussianState::with_tolerances(linalg::hermitian_part(&out), tol)
    }

    /// `second ∘ first`. A contravariant `second` conjugates the matrices of
    /// `first`: `K = K₂ K̄₁`, `μ = K₂ μ̄₁ K₂* + μ₂`.
    pub fn concatenate(second: &Self, first: &Self) -> Result<Self> {
        Self::concatenate_with(second, first, &Tolerances::default())
    }

    pub fn concatenate_with(second: &Self, first: &Self, tol: &Tolerances) -> Result<Self> {
        if first.output_modes() != second.input_modes() {
            return Err(Error::ModeMismatch {
                expected: second.input_modes(),
                found: first.output_modes(),
            });
        }
        let (k1, mu1) = match second.kind {
            ChannelKind::Covariant => (first.k.clone(), first.mu.clone()),
            ChannelKind::Contravariant => (linalg::conj(&first.k), linalg::conj(&first.mu)),
        };
        let k = &second.k * k1;
        let mu = &second.k * mu1 * second.k.adjoint() + &second.mu;
        Self::with_tolerances(second.kind.compose(first.kind), k, linalg::hermitian_part(&mu), tol)
    }

    /// The complementary channel of a quantum-limited amplifier with diagonal
    /// `K`: the quantum-limited contravariant channel with matrix `√(KK* − I)`.
    pub fn complementary_of_amplifier(&self) -> Result<Self> {
        self.complementary_of_amplifier_with(&Tolerances::default())
    }

    pub fn complementary_of_amplifier_with(&self, tol: &Tolerances) -> Result<Self> {
        if !self.is_quantum_limited_amplifier(tol) {
            return Err(Error::NotQuantumLimitedAmplifier);
        }
        if !self.k.is_square() || !linalg::is_diagonal(&self.k, tol.eq) {
            return Err(Error::NotDiagonal);
        }
        let gains: Vec<f64> = (0..self.k.nrows())
            .map(|j| (self.k[(j, j)].norm_sqr() - 1.0).max(0.0).sqrt())
            .collect();
        Self::quantum_limited_contravariant(linalg::from_real_diagonal(&gains))
    }

    /// Componentwise comparison of kind, `K` and `μ`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.kind == other.kind
            && self.k.shape() == other.k.shape()
            && linalg::max_abs_diff(&self.k, &other.k) <= tol
            && linalg::max_abs_diff(&self.mu, &other.mu) <= tol
    }
}

fn check_range(name: &'static str, value: f64, ok: bool, range: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value, range })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_real_diagonal as diag;

    fn scalar(ch: &CMatrix) -> f64 {
        assert_eq!(ch.shape(), (1, 1));
        assert!(ch[(0, 0)].im.abs() < 1e-14);
        ch[(0, 0)].re
    }

    #[test]
    fn quantum_limited_amplifier_validates() {
        let ch = GaussianChannel::new(ChannelKind::Covariant, diag(&[2f64.sqrt()]), diag(&[0.5])).unwrap();
        let class = ch.classify();
        assert_eq!(class.tag, ClassTag::Amplifier);
        assert!(class.quantum_limited);
    }

    #[test]
    fn amplifier_below_minimal_noise_is_rejected() {
        let err = GaussianChannel::new(ChannelKind::Covariant, diag(&[2f64.sqrt()]), diag(&[0.4])).unwrap_err();
        match err {
            Error::InequalityViolated { min_eigenvalue } => assert!((min_eigenvalue + 0.1).abs() < 1e-12),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn contravariant_minimal() {
        let ch = GaussianChannel::new(ChannelKind::Contravariant, diag(&[1.0]), diag(&[1.0])).unwrap();
        assert!(ch.classify().quantum_limited);
        assert!(GaussianChannel::new(ChannelKind::Contravariant, diag(&[1.0]), diag(&[0.9])).is_err());
    }

    #[test]
    fn shape_errors() {
        let k = CMatrix::zeros(2, 3);
        let mu = linalg::identity(3);
        assert!(matches!(
            GaussianChannel::new(ChannelKind::Covariant, k, mu),
            Err(Error::ShapeMismatch { name: "mu", .. })
        ));
        let mut mu = linalg::identity(2);
        mu[(0, 1)] = c(0.3);
        assert!(matches!(
            GaussianChannel::new(ChannelKind::Covariant, linalg::identity(2), mu),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn amplifier_on_vacuum_gives_one_photon_thermal() {
        let ch = GaussianChannel::quantum_limited_amplifier(diag(&[2f64.sqrt()])).unwrap();
        let out = ch.apply(&GaussianState::vacuum(1)).unwrap();
        assert!((scalar(out.alpha()) - 1.5).abs() < 1e-14);
    }

    #[test]
    fn identity_channel_fixes_states() {
        let st = GaussianState::new(diag(&[0.7, 2.0])).unwrap();
        let out = GaussianChannel::identity(2).apply(&st).unwrap();
        assert_eq!(out, st);
    }

    #[test]
    fn contravariant_on_vacuum() {
        let ch = GaussianChannel::quantum_limited_contravariant(diag(&[1.0])).unwrap();
        let out = ch.apply(&GaussianState::vacuum(1)).unwrap();
        assert!((scalar(out.alpha()) - 1.5).abs() < 1e-14);
    }

    #[test]
    fn contravariant_conjugates_the_covariance() {
        let mut alpha = diag(&[1.0, 2.0]);
        alpha[(0, 1)] = num_complex::Complex64::new(0.1, 0.4);
        alpha[(1, 0)] = num_complex::Complex64::new(0.1, -0.4);
        let st = GaussianState::new(alpha.clone()).unwrap();
        let ch = GaussianChannel::quantum_limited_contravariant(linalg::identity(2)).unwrap();
        let out = ch.apply(&st).unwrap();
        let expected = linalg::conj(&alpha) + linalg::identity(2);
        assert!(linalg::max_abs_diff(out.alpha(), &expected) < 1e-14);
    }

    #[test]
    fn mode_mismatch() {
        let ch = GaussianChannel::identity(2);
        assert!(matches!(ch.apply(&GaussianState::vacuum(1)), Err(Error::ModeMismatch { .. })));
        assert!(GaussianChannel::concatenate(&ch, &GaussianChannel::identity(3)).is_err());
    }

    #[test]
    fn amplifier_after_attenuator_is_additive_noise() {
        let amp = GaussianChannel::new(ChannelKind::Covariant, diag(&[2f64.sqrt()]), diag(&[0.5])).unwrap();
        let att = GaussianChannel::new(ChannelKind::Covariant, diag(&[0.5f64.sqrt()]), diag(&[0.25])).unwrap();
        let ch = GaussianChannel::concatenate(&amp, &att).unwrap();
        assert_eq!(ch.kind(), ChannelKind::Covariant);
        assert!((scalar(ch.k()) - 1.0).abs() < 1e-14);
        assert!((scalar(ch.mu()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn concatenation_with_identity() {
        let ch = GaussianChannel::thermal_noise(0.3, 2.0).unwrap();
        let id = GaussianChannel::identity(1);
        assert!(GaussianChannel::concatenate(&ch, &id).unwrap().approx_eq(&ch, 1e-15));
        assert!(GaussianChannel::concatenate(&id, &ch).unwrap().approx_eq(&ch, 1e-15));
    }

    #[test]
    fn contravariant_after_attenuator() {
        let contra = GaussianChannel::quantum_limited_contravariant(diag(&[1.0])).unwrap();
        let att = GaussianChannel::quantum_limited_attenuator(diag(&[0.5f64.sqrt()])).unwrap();
        let ch = GaussianChannel::concatenate(&contra, &att).unwrap();
        assert_eq!(ch.kind(), ChannelKind::Contravariant);
        assert!((scalar(ch.k()) - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((scalar(ch.mu()) - 1.25).abs() < 1e-14);
        // μ ≥ (1 + 1/2)/2 with margin 1/2
        assert!((ch.inequality_margin() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn complementary_pairs() {
        let amp = GaussianChannel::quantum_limited_amplifier(diag(&[2f64.sqrt()])).unwrap();
        let comp = amp.complementary_of_amplifier().unwrap();
        assert_eq!(comp.kind(), ChannelKind::Contravariant);
        assert!((scalar(comp.k()) - 1.0).abs() < 1e-14);
        assert!((scalar(comp.mu()) - 1.0).abs() < 1e-14);

        let id = GaussianChannel::identity(1).complementary_of_amplifier().unwrap();
        assert!(scalar(id.k()).abs() < 1e-15);
        assert!((scalar(id.mu()) - 0.5).abs() < 1e-15);

        let amp2 = GaussianChannel::quantum_limited_amplifier(diag(&[2f64.sqrt(), 5f64.sqrt()])).unwrap();
        let comp2 = amp2.complementary_of_amplifier().unwrap();
        assert!(linalg::max_abs_diff(comp2.k(), &diag(&[1.0, 2.0])) < 1e-14);
        assert!(linalg::max_abs_diff(comp2.mu(), &diag(&[1.0, 2.5])) < 1e-14);
    }

    #[test]
    fn complementary_requires_quantum_limited_diagonal_amplifier() {
        let noisy = GaussianChannel::noisy_amplifier(2.0, 1.0).unwrap();
        assert_eq!(noisy.complementary_of_amplifier().unwrap_err(), Error::NotQuantumLimitedAmplifier);
        let k = from_rows(&[&[0.0, 2f64.sqrt()], &[2f64.sqrt(), 0.0]]);
        let swapped = GaussianChannel::quantum_limited_amplifier(k).unwrap();
        assert_eq!(swapped.complementary_of_amplifier().unwrap_err(), Error::NotDiagonal);
    }

    fn from_rows(rows: &[&[f64]]) -> CMatrix {
        linalg::from_real_rows(rows)
    }

    #[test]
    fn entanglement_breaking() {
        for k in [0.0, 0.3, 1.0, 2.5] {
            assert!(GaussianChannel::quantum_limited_contravariant(diag(&[k])).unwrap().is_entanglement_breaking());
        }
        let amp = GaussianChannel::quantum_limited_amplifier(diag(&[2f64.sqrt()])).unwrap();
        assert!(!amp.is_entanglement_breaking());
        assert!(!GaussianChannel::additive_noise(0.99).unwrap().is_entanglement_breaking());
        assert!(GaussianChannel::additive_noise(1.0).unwrap().is_entanglement_breaking());
        assert!(GaussianChannel::additive_noise(1.5).unwrap().is_entanglement_breaking());
    }

    #[test]
    fn family_parameter_ranges() {
        assert!(GaussianChannel::thermal_noise(1.2, 0.0).is_err());
        assert!(GaussianChannel::noisy_amplifier(0.5, 0.0).is_err());
        assert!(GaussianChannel::additive_noise(-1.0).is_err());
        assert!(GaussianChannel::thermal_noise(f64::NAN, 0.0).is_err());
    }
}
