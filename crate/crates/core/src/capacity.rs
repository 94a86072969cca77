//! Energy-constrained classical capacity of Gaussian channels.
//!
//! The capacity is
//!
//! ```text
//! C = max_{ν ⪰ 0, tr νε ≤ E}  tr g(KνK* + c) − tr g(c),   c = μ + (KK* − I)/2,
//! ```
//!
//! a concave maximization over a slice of the PSD cone. The general solver
//! whitens the constraint (`ν = W X W` with `W = ε^{-1/2}`), so the feasible
//! face becomes `{X ⪰ 0, tr X = E}`, and runs projected gradient ascent with
//! Armijo backtracking. The Euclidean projection onto that face is a simplex
//! projection of the eigenvalues. Each iterate carries a Frank–Wolfe gap
//! `E λ_max(∇) − ⟨∇, X⟩`, an upper bound on the distance to the optimum.

use crate::channel::GaussianChannel;
use crate::entropy::{g_prime, g_unchecked, LogBase};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};
use crate::tolerance::Tolerances;

/// Quadratic gauge-invariant Hamiltonian `H = Σ a_j† ε_jk a_k` and budget `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyConstraint {
    epsilon: CMatrix,
    energy: f64,
}

impl EnergyConstraint {
    pub fn new(epsilon: CMatrix, energy: f64) -> Result<Self> {
        Self::with_tolerances(epsilon, energy, &Tolerances::default())
    }

    pub fn with_tolerances(epsilon: CMatrix, energy: f64, tol: &Tolerances) -> Result<Self> {
        if !epsilon.is_square() || epsilon.nrows() == 0 {
            return Err(Error::ShapeMismatch {
                name: "epsilon",
                rows: epsilon.nrows(),
                cols: epsilon.ncols(),
                expected: "square, at least 1x1".into(),
            });
        }
        let defect = linalg::hermiticity_defect(&epsilon);
        if defect > tol.herm {
            return Err(Error::NotHermitian { name: "epsilon", defect });
        }
        let epsilon = linalg::hermitian_part(&epsilon);
        let lowest = linalg::min_eigenvalue(&epsilon);
        if lowest <= tol.psd {
            return Err(Error::InvalidConstraint(format!(
                "epsilon must be positive definite (smallest eigenvalue {lowest:.3e})"
            )));
        }
        if !(energy >= 0.0) || !energy.is_finite() {
            return Err(Error::InvalidConstraint(format!("energy budget {energy} must be finite and >= 0")));
        }
        Ok(Self { epsilon, energy })
    }

    /// `ε = I` on `modes` modes.
    pub fn photon_number(modes: usize, energy: f64) -> Result<Self> {
        Self::new(linalg::identity(modes), energy)
    }

    pub fn epsilon(&self) -> &CMatrix {
        &self.epsilon
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn modes(&self) -> usize {
        self.epsilon.nrows()
    }

    /// `tr(ν ε)`.
    pub fn energy_of(&self, nu: &CMatrix) -> f64 {
        (nu * &self.epsilon).trace().re
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    /// Capacity in nats.
    pub value: f64,
    /// Covariance of the optimal Gaussian ensemble.
    pub optimal_nu: CMatrix,
    pub iterations: usize,
    pub converged: bool,
    /// Norm of the projected gradient step at the returned point.
    pub gradient_norm: f64,
    /// Certified upper bound on `max − value` (Frank–Wolfe gap), in nats.
    pub duality_gap: f64,
}

impl CapacityResult {
    pub fn value_in(&self, base: LogBase) -> f64 {
        base.from_nats(self.value)
    }
}

/// `F(ν) = tr g(KνK* + c)` and its gradient `K* g′(KνK* + c) K`.
#[derive(Debug, Clone)]
pub struct CapacityObjective {
    k: CMatrix,
    offset: CMatrix,
}

impl CapacityObjective {
    pub fn new(channel: &GaussianChannel) -> Self {
        Self {
            k: channel.k().clone(),
            offset: linalg::hermitian_part(&channel.vacuum_output_excess()),
        }
    }

    fn argument(&self, nu: &CMatrix) -> CMatrix {
        linalg::hermitian_part(&(&self.k * nu * self.k.adjoint() + &self.offset))
    }

    pub fn value(&self, nu: &CMatrix) -> f64 {
        linalg::eigvalsh(&self.argument(nu))
            .iter()
            .map(|&x| g_unchecked(x.max(0.0)))
            .sum()
    }

    pub fn gradient(&self, nu: &CMatrix) -> CMatrix {
        let gp = linalg::hermitian_function(&self.argument(nu), g_prime);
        linalg::hermitian_part(&(self.k.adjoint() * gp * &self.k))
    }

    /// `tr g(c)`, the minimal output entropy.
    pub fn baseline(&self) -> f64 {
        self.value(&CMatrix::zeros(self.k.ncols(), self.k.ncols()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    pub max_iterations: usize,
    /// Stop once the projected gradient step has this norm or less.
    pub gradient_tol: f64,
    /// Stop once the Frank–Wolfe gap is this small (nats).
    pub gap_tol: f64,
    pub armijo: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            gradient_tol: 1e-8,
            gap_tol: 1e-10,
            armijo: 1e-4,
        }
    }
}

pub fn constrained_capacity(channel: &GaussianChannel, constraint: &EnergyConstraint) -> Result<CapacityResult> {
    constrained_capacity_with(channel, constraint, &Tolerances::default(), &OptimizerOptions::default())
}

pub fn constrained_capacity_with(
    channel: &GaussianChannel,
    constraint: &EnergyConstraint,
    tol: &Tolerances,
    opts: &OptimizerOptions,
) -> Result<CapacityResult> {
    check_inputs(channel, constraint, tol)?;
    let s = channel.input_modes();
    let objective = CapacityObjective::new(channel);
    let baseline = objective.baseline();
    let energy = constraint.energy();

    if energy == 0.0 {
        return Ok(CapacityResult {
            value: 0.0,
            optimal_nu: CMatrix::zeros(s, s),
            iterations: 0,
            converged: true,
            gradient_norm: 0.0,
            duality_gap: 0.0,
        });
    }

    let whitener = linalg::hermitian_function(constraint.epsilon(), |x| 1.0 / x.sqrt());
    let to_nu = |x: &CMatrix| linalg::hermitian_part(&(&whitener * x * &whitener));
    let f = |x: &CMatrix| objective.value(&to_nu(x));
    let grad = |x: &CMatrix| linalg::hermitian_part(&(&whitener * objective.gradient(&to_nu(x)) * &whitener));

    let mut x = linalg::identity(s) * c(energy / s as f64);
    let mut fx = f(&x);
    let mut step = 1.0_f64;
    let mut iterations = 0;
    let mut converged = false;
    let mut gradient_norm = f64::INFINITY;
    let mut duality_gap = f64::INFINITY;

    while iterations < opts.max_iterations {
        let gx = grad(&x);
        duality_gap = (energy * linalg::max_eigenvalue(&gx) - linalg::inner(&gx, &x)).max(0.0);
        gradient_norm = (project_onto_face(&(&x + &gx), energy) - &x).norm();
        if gradient_norm <= opts.gradient_tol || duality_gap <= opts.gap_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut accepted = false;
        while step > 1e-18 {
            let candidate = project_onto_face(&(&x + &gx * c(step)), energy);
            let ascent = linalg::inner(&gx, &(&candidate - &x));
            let fc = f(&candidate);
            if fc >= fx + opts.armijo * ascent {
                x = candidate;
                fx = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        step = (step * 2.0).min(1e8);
    }

    Ok(CapacityResult {
        value: (fx - baseline).max(0.0),
        optimal_nu: to_nu(&x),
        iterations,
        converged,
        gradient_norm,
        duality_gap,
    })
}

fn check_inputs(channel: &GaussianChannel, constraint: &EnergyConstraint, tol: &Tolerances) -> Result<()> {
    let margin = channel.inequality_margin();
    if margin < -tol.psd {
        return Err(Error::InvalidChannel(format!("inequality margin {margin:.3e}")));
    }
    if constraint.modes() != channel.input_modes() {
        return Err(Error::ModeMismatch {
            expected: channel.input_modes(),
            found: constraint.modes(),
        });
    }
    Ok(())
}

/// Euclidean projection of a Hermitian matrix onto `{X ⪰ 0, tr X = budget}`.
pub fn project_onto_face(y: &CMatrix, budget: f64) -> CMatrix {
    let (values, vectors) = linalg::eigh(y);
    let projected = project_onto_simplex(values.as_slice(), budget);
    linalg::from_eigen(&projected, &vectors)
}

/// Projection onto `{x ≥ 0, Σ x = budget}` by the sort-and-threshold rule.
pub fn project_onto_simplex(y: &[f64], budget: f64) -> Vec<f64> {
    let mut sorted = y.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        cumulative += v;
        let t = (cumulative - budget) / (i + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|&v| (v - theta).max(0.0)).collect()
}

pub fn waterfilling_commuting(channel: &GaussianChannel, constraint: &EnergyConstraint) -> Result<CapacityResult> {
    waterfilling_commuting_with(channel, constraint, &Tolerances::default())
}

/// Closed-form water-filling when `K`, `μ` and `ε` are simultaneously
/// diagonalizable. Per mode `j` the stationarity condition is
/// `k_j² g′(k_j² ν_j + c_j) = λ ε_j`; the multiplier `λ` is found by
/// bisection on the budget.
pub fn waterfilling_commuting_with(
    channel: &GaussianChannel,
    constraint: &EnergyConstraint,
    tol: &Tolerances,
) -> Result<CapacityResult> {
    check_inputs(channel, constraint, tol)?;
    let s = channel.input_modes();
    if channel.output_modes() != s {
        return Err(Error::NotCommuting { defect: f64::INFINITY });
    }
    let basis = common_eigenbasis(&[channel.k(), channel.mu(), constraint.epsilon()], tol)?;
    let rotate = |m: &CMatrix| basis.adjoint() * m * &basis;
    let (kd, mud, epsd) = (rotate(channel.k()), rotate(channel.mu()), rotate(constraint.epsilon()));

    let gain: Vec<f64> = (0..s).map(|j| kd[(j, j)].norm_sqr()).collect();
    let offset: Vec<f64> = (0..s).map(|j| (mud[(j, j)].re + (gain[j] - 1.0) / 2.0).max(0.0)).collect();
    let weight: Vec<f64> = (0..s).map(|j| epsd[(j, j)].re).collect();
    let energy = constraint.energy();

    let levels = |lambda: f64| -> Vec<f64> {
        (0..s)
            .map(|j| {
                if gain[j] <= 0.0 {
                    return 0.0;
                }
                let y = lambda * weight[j] / gain[j];
                let x = 1.0 / y.exp_m1();
                ((x - offset[j]) / gain[j]).max(0.0)
            })
            .collect()
    };
    let spent = |nu: &[f64]| nu.iter().zip(&weight).map(|(n, w)| n * w).sum::<f64>();

    let mut iterations = 0;
    let nu: Vec<f64> = if energy == 0.0 || gain.iter().all(|&k| k <= 0.0) {
        vec![0.0; s]
    } else {
        // λ above which every mode is dry.
        let mut hi = (0..s)
            .filter(|&j| gain[j] > 0.0)
            .map(|j| gain[j] * g_prime(offset[j]) / weight[j])
            .fold(0.0_f64, f64::max);
        let mut lo = hi;
        while spent(&levels(lo)) < energy {
            lo *= 0.5;
            iterations += 1;
        }
        while spent(&levels(hi)) > energy {
            hi *= 2.0;
            iterations += 1;
        }
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if mid <= lo || mid >= hi {
                break;
            }
            if spent(&levels(mid)) > energy {
                lo = mid;
            } else {
                hi = mid;
            }
            iterations += 1;
        }
        let mut nu = levels(lo);
        // Put the residual bisection error on the active modes.
        let total = spent(&nu);
        if total > 0.0 {
            for v in nu.iter_mut() {
                *v *= energy / total;
            }
        }
        nu
    };

    let value: f64 = (0..s)
        .map(|j| g_unchecked(gain[j] * nu[j] + offset[j]) - g_unchecked(offset[j]))
        .sum();
    let optimal_nu = linalg::hermitian_part(&(&basis * linalg::from_real_diagonal(&nu) * basis.adjoint()));
    Ok(CapacityResult {
        value: value.max(0.0),
        optimal_nu,
        iterations,
        converged: true,
        gradient_norm: 0.0,
        duality_gap: 0.0,
    })
}

/// Unitary that diagonalizes every matrix in `mats`, or `NotCommuting`.
///
/// Diagonalizes a generic Hermitian combination of the matrices and then
/// checks the off-diagonal residue of each.
fn common_eigenbasis(mats: &[&CMatrix], tol: &Tolerances) -> Result<CMatrix> {
    const WEIGHTS: [(f64, f64); 3] = [(0.618_033_988_7, 0.271_828_182_8), (0.314_159_265_4, 0.141_421_356_2), (1.0, 0.0)];
    let n = mats[0].nrows();
    let mut combo = CMatrix::zeros(n, n);
    for (m, (a, b)) in mats.iter().zip(WEIGHTS.iter().cycle()) {
        combo += linalg::hermitian_part(m) * c(*a);
        let skew = (*m - m.adjoint()) * num_complex::Complex64::new(0.0, 0.5 * b);
        combo += skew;
    }
    let (_, basis) = linalg::eigh(&combo);
    let mut defect = 0.0_f64;
    for m in mats {
        let rotated = basis.adjoint() * *m * &basis;
        let scale = linalg::max_abs(m).max(1.0);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    defect = defect.max(rotated[(i, j)].norm() / scale);
                }
            }
        }
    }
    if defect > tol.eq.max(1e3 * f64::EPSILON * n as f64) {
        return Err(Error::NotCommuting { defect });
    }
    Ok(basis)
}
