//! Stinespring dilations of the one-mode quantum-limited attenuator and
//! amplifier.
//!
//! The beam splitter `exp[θ(a†b − ab†)]` conserves `n_a + n_b` and the
//! two-mode squeezer `exp[r(a†b† − ab)]` conserves `n_a − n_b`, so with the
//! environment in vacuum the input level `n` only couples to the chain
//! `|n − j, j⟩` (resp. `|n + j, j⟩`). Each chain is exponentiated on its own.
//! Beam-splitter chains are finite and exact; squeezer chains are infinite and
//! are cut where the photon-number tail falls below `tail_target`, after
//! exponentiating on a padded chain.

use bgc_core::linalg::{c, CMatrix};
use nalgebra::{DMatrix, DVector};

use crate::config::OracleConfig;
use crate::density::TruncatedDensityMatrix;
use crate::error::{FockError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DilationKind {
    BeamSplitter,
    TwoModeSqueezer,
}

/// Amplitudes `⟨n ∓ j, j| U |n, 0⟩` for every input level below
/// `input_levels`.
#[derive(Debug, Clone)]
pub struct Dilation {
    kind: DilationKind,
    parameter: f64,
    input_levels: usize,
    output_dim: usize,
    env_dim: usize,
    amplitudes: Vec<Vec<f64>>,
    lost: Vec<f64>,
}

fn chain_first_column(generator: DMatrix<f64>) -> DVector<f64> {
    generator.exp().column(0).into_owned()
}

/// Smallest `j` with `Σ_{i>j} C(n+i, i) tⁱ (1−t)^{n+1} ≤ target`: the
/// environment cutoff that keeps the squeezer tail of level `n` under target.
fn squeezer_cutoff(n: usize, t: f64, target: f64, limit: usize) -> usize {
    if t == 0.0 {
        return 0;
    }
    let mut p = (1.0 - t).powi(n as i32 + 1);
    let mut inside = p;
    let mut j = 0;
    while 1.0 - inside > target && j < limit {
        j += 1;
        p *= t * (n + j) as f64 / j as f64;
        inside += p;
    }
    j
}

impl Dilation {
    /// Beam splitter with `cos θ = k` acting on the first `d` levels.
    pub fn attenuator(k: f64, d: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(FockError::ParameterOutOfRange {
                name: "k",
                value: k,
                range: "[0, 1]",
            });
        }
        if d < 1 {
            return Err(FockError::DimensionTooSmall { dim: d, min: 1 });
        }
        let theta = k.acos();
        let amplitudes: Vec<Vec<f64>> = (0..d)
            .map(|n| {
                let gen = DMatrix::from_fn(n + 1, n + 1, |i, j| {
                    if i == j + 1 {
                        -theta * ((n - j) as f64 * (j + 1) as f64).sqrt()
                    } else if j == i + 1 {
                        theta * ((n - i) as f64 * (i + 1) as f64).sqrt()
                    } else {
                        0.0
                    }
                });
                chain_first_column(gen).iter().copied().collect()
            })
            .collect();
        Ok(Self {
            kind: DilationKind::BeamSplitter,
            parameter: k,
            input_levels: d,
            output_dim: d,
            env_dim: d,
            lost: vec![0.0; d],
            amplitudes,
        })
    }

    /// Two-mode squeezer with `cosh r = gain` for inputs on the first
    /// `input_levels` levels. Output and environment cutoffs are sized from
    /// the squeezer tail of the top level and capped at `max_dim`.
    pub fn amplifier(gain: f64, input_levels: usize, config: &OracleConfig) -> Result<Self> {
        if !(gain >= 1.0 && gain.is_finite()) {
            return Err(FockError::ParameterOutOfRange {
                name: "K",
                value: gain,
                range: ">= 1",
            });
        }
        if input_levels < 1 || input_levels >= config.max_dim {
            return Err(FockError::DimensionTooSmall {
                dim: config.max_dim,
                min: input_levels + 1,
            });
        }
        let r = gain.acosh();
        let t = 1.0 - 1.0 / (gain * gain);
        let top = input_levels - 1;
        let cutoff = squeezer_cutoff(top, t, config.tail_target, config.max_dim - input_levels);
        let padded = 2 * cutoff + 16;

        let mut amplitudes = Vec::with_capacity(input_levels);
        let mut lost = Vec::with_capacity(input_levels);
        for n in 0..input_levels {
            let gen = DMatrix::from_fn(padded, padded, |i, j| {
                if i == j + 1 {
                    r * ((n + j + 1) as f64 * (j + 1) as f64).sqrt()
                } else if j == i + 1 {
                    -r * ((n + i + 1) as f64 * (i + 1) as f64).sqrt()
                } else {
                    0.0
                }
            });
            let column: Vec<f64> = chain_first_column(gen).iter().take(cutoff + 1).copied().collect();
            lost.push((1.0 - column.iter().map(|x| x * x).sum::<f64>()).max(0.0));
            amplitudes.push(column);
        }
        let worst = lost.iter().copied().fold(0.0, f64::max);
        if worst > config.deficit_budget {
            return Err(FockError::TruncationBudgetExceeded {
                deficit: worst,
                budget: config.deficit_budget,
            });
        }
        Ok(Self {
            kind: DilationKind::TwoModeSqueezer,
            parameter: gain,
            input_levels,
            output_dim: top + cutoff + 1,
            env_dim: cutoff + 1,
            amplitudes,
            lost,
        })
    }

    pub fn kind(&self) -> DilationKind {
        self.kind
    }

    /// `k` for the beam splitter, `K` for the squeezer.
    pub fn parameter(&self) -> f64 {
        self.parameter
    }

    pub fn input_levels(&self) -> usize {
        self.input_levels
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn env_dim(&self) -> usize {
        self.env_dim
    }

    /// `⟨out, j| U |n, 0⟩` as stored, zero outside the kept range.
    pub fn amplitude(&self, n: usize, j: usize) -> f64 {
        self.amplitudes.get(n).and_then(|a| a.get(j)).copied().unwrap_or(0.0)
    }

    /// Norm lost to the environment cutoff by input level `n`.
    pub fn lost(&self, n: usize) -> f64 {
        self.lost[n]
    }

    fn output_level(&self, n: usize, j: usize) -> usize {
        match self.kind {
            DilationKind::BeamSplitter => n - j,
            DilationKind::TwoModeSqueezer => n + j,
        }
    }

    /// The isometry `|n⟩ ↦ U|n, 0⟩` as an `(output·env) × input` matrix,
    /// row index `out·env_dim + j`.
    pub fn isometry(&self) -> CMatrix {
        let mut v = CMatrix::zeros(self.output_dim * self.env_dim, self.input_levels);
        for (n, amps) in self.amplitudes.iter().enumerate() {
            for (j, &a) in amps.iter().enumerate() {
                v[(self.output_level(n, j) * self.env_dim + j, n)] = c(a);
            }
        }
        v
    }

    /// System and environment marginals of `U (ρ ⊗ |0⟩⟨0|) U*`.
    pub fn apply(
        &self,
        rho: &TruncatedDensityMatrix,
        config: &OracleConfig,
    ) -> Result<(TruncatedDensityMatrix, TruncatedDensityMatrix)> {
        let levels = rho.highest_level() + 1;
        if levels > self.input_levels {
            return Err(FockError::InvalidState(format!(
                "input populates level {} but the dilation covers {} levels",
                levels - 1,
                self.input_levels
            )));
        }
        let r = rho.rho();
        let mut out = CMatrix::zeros(self.output_dim, self.output_dim);
        let mut env = CMatrix::zeros(self.env_dim, self.env_dim);
        for n in 0..levels {
            let an = &self.amplitudes[n];
            for np in 0..levels {
                let anp = &self.amplitudes[np];
                let entry = r[(n, np)];
                for j in 0..an.len().min(anp.len()) {
                    out[(self.output_level(n, j), self.output_level(np, j))] += entry * (an[j] * anp[j]);
                }
            }
            for (j, &a) in an.iter().enumerate() {
                for jp in 0..self.env_dim {
                    // Partner level with the same system output.
                    let np = match self.kind {
                        DilationKind::BeamSplitter => (n + jp).checked_sub(j),
                        DilationKind::TwoModeSqueezer => (n + j).checked_sub(jp),
                    };
                    let Some(np) = np.filter(|&np| np < levels) else { continue };
                    let b = self.amplitude(np, jp);
                    if b != 0.0 {
                        env[(j, jp)] += r[(n, np)] * (a * b);
                    }
                }
            }
        }
        Ok((
            TruncatedDensityMatrix::checked(out, config)?,
            TruncatedDensityMatrix::checked(env, config)?,
        ))
    }
}

/// Quantum-limited attenuator with transmissivity `k²`.
pub fn apply_attenuator(k: f64, rho: &TruncatedDensityMatrix, config: &OracleConfig) -> Result<TruncatedDensityMatrix> {
    Ok(Dilation::attenuator(k, rho.dim())?.apply(rho, config)?.0)
}

/// Quantum-limited amplifier with gain `K²`; returns the output and the
/// environment (complementary) state.
pub fn apply_amplifier(
    gain: f64,
    rho: &TruncatedDensityMatrix,
    config: &OracleConfig,
) -> Result<(TruncatedDensityMatrix, TruncatedDensityMatrix)> {
    Dilation::amplifier(gain, rho.highest_level() + 1, config)?.apply(rho, config)
}
