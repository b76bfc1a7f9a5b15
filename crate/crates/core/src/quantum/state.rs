use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::linalg::{self, c, CMatrix, Keep};
use crate::error::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-12;
/// Tolerance used by operations that need `Tr ρ = 1`.
pub const NORMALISATION_TOL: f64 = 1e-9;

/// A positive semi-definite operator with trace in `[0, 1]`.
///
/// Sub-normalised states are allowed; operations that need a normalised
/// input check it themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::InvalidState(format!(
                "expected a non-empty square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let skew = linalg::max_abs_diff(&m, &m.adjoint());
        if skew > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {skew:e})")));
        }
        Self::from_hermitian(linalg::hermitian_part(&m))
    }

    /// Validates PSD and trace of a matrix that is Hermitian up to rounding.
    pub(crate) fn from_hermitian(m: CMatrix) -> Result<Self> {
        let m = linalg::hermitian_part(&m);
        let values = linalg::hermitian_eigenvalues(&m);
        if let Some(&min) = values.first() {
            if min < -PSD_TOL {
                return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
            }
        }
        let tr = linalg::trace(&m).re;
        if tr > 1.0 + TRACE_TOL || tr < -TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} outside [0, 1]")));
        }
        Ok(Self { m })
    }

    /// Skips validation; for hot paths that produce valid states by construction.
    pub(crate) fn new_unchecked(m: CMatrix) -> Self {
        Self { m }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&x| c(x, 0.0)));
        Self::new(CMatrix::from_diagonal(&d))
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            m: &psi.amps * psi.amps.adjoint(),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim, dim).scale(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.m).re
    }

    pub fn is_normalised(&self) -> bool {
        (self.trace() - 1.0).abs() <= NORMALISATION_TOL
    }

    pub(crate) fn require_normalised(&self) -> Result<()> {
        if self.is_normalised() {
            Ok(())
        } else {
            Err(Error::NotNormalised(self.trace()))
        }
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.m)
    }

    pub fn scale(&self, factor: f64) -> Result<Self> {
        Self::from_hermitian(self.m.scale(factor))
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            m: linalg::kron(&self.m, &other.m),
        }
    }

    /// Reduced state after tracing out one factor of `C^d1 ⊗ C^d2`.
    pub fn partial_trace(&self, d1: usize, d2: usize, keep: Keep) -> Result<Self> {
        if d1 * d2 != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: d1 * d2,
            });
        }
        Ok(Self::new_unchecked(linalg::hermitian_part(
            &linalg::partial_trace(&self.m, d1, d2, keep),
        )))
    }

    /// `U ρ U†` for a unitary (or isometry) `U`.
    pub fn conjugate(&self, u: &CMatrix) -> Result<Self> {
        if u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ncols(),
            });
        }
        Ok(Self::new_unchecked(linalg::hermitian_part(&(u * &self.m * u.adjoint()))))
    }

    /// Convex mixture `Σ p_i ρ_i`.
    pub fn mixture(weights: &[f64], states: &[DensityMatrix]) -> Result<Self> {
        let Some(first) = states.first() else {
            return Err(Error::InvalidState("empty mixture".into()));
        };
        let mut acc = CMatrix::zeros(first.dim(), first.dim());
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: s.dim(),
                });
            }
            acc += s.m.scale(*w);
        }
        Self::from_hermitian(acc)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_pairs(&self.m).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(deserializer)?;
        let m = matrix_from_pairs(&rows).map_err(serde::de::Error::custom)?;
        DensityMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// Nested rows of `[re, im]` pairs.
pub fn matrix_to_pairs(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_from_pairs(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidState("ragged matrix rows".into()));
    }
    Ok(CMatrix::from_fn(n, cols, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

/// A state vector with squared norm at most one.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: DVector<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("empty state vector".into()));
        }
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm2 > 1.0 + TRACE_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm2} exceeds 1")));
        }
        Ok(Self {
            amps: DVector::from_vec(amplitudes),
        })
    }

    pub(crate) fn new_unchecked(amps: DVector<Complex64>) -> Self {
        Self { amps }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = DVector::zeros(dim);
        amps[index] = c(1.0, 0.0);
        Self { amps }
    }

    pub fn zero() -> Self {
        Self::basis(2, 0)
    }

    pub fn one() -> Self {
        Self::basis(2, 1)
    }

    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new_unchecked(DVector::from_vec(vec![c(h, 0.0), c(h, 0.0)]))
    }

    pub fn minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new_unchecked(DVector::from_vec(vec![c(h, 0.0), c(-h, 0.0)]))
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            amps: self.amps.kronecker(&other.amps),
        }
    }

    pub fn apply(&self, u: &CMatrix) -> Result<Self> {
        if u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ncols(),
            });
        }
        Ok(Self { amps: u * &self.amps })
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}
