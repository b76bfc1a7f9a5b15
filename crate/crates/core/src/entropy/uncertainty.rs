//! Overlap constant of the entropic uncertainty relation
//! `H_min^ε(X|CP) + H_max^ε(X|BP) ≥ log₂(1/c_q)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::linalg::{self, c, CMatrix};
use crate::quantum::COMPLETENESS_TOL;

/// Generalised measurements `{F^{p,x}}_x`, one list per setting `p`.
#[derive(Debug, Clone)]
pub struct MeasurementFamily {
    settings: Vec<Vec<CMatrix>>,
}

impl MeasurementFamily {
    /// Checks `Σ_x F†F = 1` for every setting.
    pub fn new(settings: Vec<Vec<CMatrix>>) -> Result<Self> {
        let dim = settings
            .first()
            .and_then(|s| s.first())
            .map(|f| f.ncols())
            .ok_or_else(|| Error::InvalidMeasurement("no settings".into()))?;
        for (p, ops) in settings.iter().enumerate() {
            if ops.iter().any(|f| f.ncols() != dim) {
                return Err(Error::InvalidMeasurement(format!("setting {p}: inconsistent input dimension")));
            }
            let sum = ops.iter().fold(CMatrix::zeros(dim, dim), |acc, f| acc + f.adjoint() * f);
            let dev = linalg::max_abs_diff(&sum, &CMatrix::identity(dim, dim));
            if dev > COMPLETENESS_TOL {
                return Err(Error::InvalidMeasurement(format!(
                    "setting {p}: completeness violated by {dev:e}"
                )));
            }
        }
        Ok(Self { settings })
    }

    /// Projective measurement onto the orthonormal columns of each unitary.
    pub fn from_bases(bases: &[CMatrix]) -> Result<Self> {
        Self::new(
            bases
                .iter()
                .map(|u| {
                    (0..u.ncols())
                        .map(|i| {
                            let v = u.column(i).into_owned();
                            &v * v.adjoint()
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Computational and Hadamard bases.
    pub fn bb84() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_bases(&[CMatrix::identity(2, 2), linalg::from_real(2, 2, &[h, h, h, -h])])
            .expect("BB84 bases are complete")
    }

    /// The computational basis and its rotation by `theta` in the real plane.
    pub fn rotated_pair(theta: f64) -> Self {
        let (s, co) = theta.sin_cos();
        let rot = CMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)]);
        Self::from_bases(&[CMatrix::identity(2, 2), rot]).expect("rotation is unitary")
    }

    pub fn len(&self) -> usize {
        self.settings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.settings.is_empty()
    }

    pub fn settings(&self) -> &[Vec<CMatrix>] {
        &self.settings
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Overlap {
    pub c_q: f64,
    /// `log₂(1/c_q)`.
    pub bound: f64,
}

/// `c_q = max_p max_{x,z} ‖F^{q(p),x} (F^{p,z})†‖²_∞` for the setting
/// bijection `q(p) = symmetry[p]`.
pub fn eur_overlap(mf: &MeasurementFamily, symmetry: &[usize]) -> Result<Overlap> {
    let n = mf.len();
    let mut seen = vec![false; n];
    if symmetry.len() != n || symmetry.iter().any(|&q| q >= n || std::mem::replace(&mut seen[q], true)) {
        return Err(Error::InvalidMeasurement("symmetry is not a bijection on the settings".into()));
    }
    let mut c_q: f64 = 0.0;
    for (p, &q) in symmetry.iter().enumerate() {
        for fx in &mf.settings[q] {
            for fz in &mf.settings[p] {
                let norm = linalg::operator_norm(&(fx * fz.adjoint()));
                c_q = c_q.max(norm * norm);
            }
        }
    }
    Ok(Overlap {
        c_q,
        bound: -c_q.log2(),
    })
}
