//! JSON wire formats shared with the command-line front end.
//!
//! Matrices are row-major arrays of `{"re": …, "im": …}` objects:
//!
//! ```json
//! {"kind": "covariant", "K": [[{"re": 1.0, "im": 0.0}]], "mu": [[{"re": 0.5, "im": 0.0}]]}
//! {"alpha": [[{"re": 0.5, "im": 0.0}]]}
//! {"epsilon": [[{"re": 1.0, "im": 0.0}]], "E": 2.0}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::capacity::{CapacityResult, EnergyConstraint};
use crate::channel::{ChannelKind, GaussianChannel};
use crate::decompose::ChannelDecomposition;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::state::GaussianState;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<ComplexJson>>);

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        MatrixJson(
            (0..m.nrows())
                .map(|i| {
                    (0..m.ncols())
                        .map(|j| ComplexJson { re: m[(i, j)].re, im: m[(i, j)].im })
                        .collect()
                })
                .collect(),
        )
    }
}

impl MatrixJson {
    pub fn to_matrix(&self, name: &'static str) -> Result<CMatrix> {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, Vec::len);
        if let Some(bad) = self.0.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch {
                name,
                rows,
                cols: bad.len(),
                expected: format!("every row of length {cols}"),
            });
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            let z = self.0[i][j];
            Complex64::new(z.re, z.im)
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelJson {
    pub kind: ChannelKind,
    #[serde(rename = "K")]
    pub k: MatrixJson,
    pub mu: MatrixJson,
}

impl From<&GaussianChannel> for ChannelJson {
    fn from(ch: &GaussianChannel) -> Self {
        Self {
            kind: ch.kind(),
            k: ch.k().into(),
            mu: ch.mu().into(),
        }
    }
}

impl ChannelJson {
    pub fn to_channel(&self, tol: &Tolerances) -> Result<GaussianChannel> {
        GaussianChannel::with_tolerances(self.kind, self.k.to_matrix("K")?, self.mu.to_matrix("mu")?, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub alpha: MatrixJson,
}

impl From<&GaussianState> for StateJson {
    fn from(st: &GaussianState) -> Self {
        Self { alpha: st.alpha().into() }
    }
}

impl StateJson {
    pub fn to_state(&self, tol: &Tolerances) -> Result<GaussianState> {
        GaussianState::with_tolerances(self.alpha.to_matrix("alpha")?, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub epsilon: MatrixJson,
    #[serde(rename = "E")]
    pub energy: f64,
}

impl From<&EnergyConstraint> for ConstraintJson {
    fn from(c: &EnergyConstraint) -> Self {
        Self {
            epsilon: c.epsilon().into(),
            energy: c.energy(),
        }
    }
}

impl ConstraintJson {
    pub fn to_constraint(&self, tol: &Tolerances) -> Result<EnergyConstraint> {
        EnergyConstraint::with_tolerances(self.epsilon.to_matrix("epsilon")?, self.energy, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub attenuator: ChannelJson,
    pub second_stage: ChannelJson,
}

impl From<&ChannelDecomposition> for DecompositionJson {
    fn from(d: &ChannelDecomposition) -> Self {
        Self {
            attenuator: (&d.attenuator).into(),
            second_stage: (&d.second_stage).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityResultJson {
    pub value: f64,
    pub optimal_nu: MatrixJson,
    pub iterations: usize,
    pub converged: bool,
    pub gradient_norm: f64,
    pub duality_gap: f64,
}

impl CapacityResultJson {
    /// `value` is reported in `base`; everything else is base-independent.
    pub fn new(r: &CapacityResult, base: crate::entropy::LogBase) -> Self {
        Self {
            value: r.value_in(base),
            optimal_nu: (&r.optimal_nu).into(),
            iterations: r.iterations,
            converged: r.converged,
            gradient_norm: r.gradient_norm,
            duality_gap: base.from_nats(r.duality_gap),
        }
    }
}
