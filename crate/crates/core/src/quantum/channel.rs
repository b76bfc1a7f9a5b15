use super::linalg::{self, c, CMatrix, Keep};
use super::state::DensityMatrix;
use crate::error::{check_unit_interval, Error, Result};

/// Completeness tolerance for `Σ E_j† E_j = 1`.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// A CPTP map given by its Kraus operators `E_j` (each `out_dim × in_dim`).
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    in_dim: usize,
    out_dim: usize,
    ops: Vec<CMatrix>,
}

impl KrausChannel {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = ops.first() else {
            return Err(Error::InvalidChannel("no Kraus operators".into()));
        };
        let (out_dim, in_dim) = first.shape();
        if ops.iter().any(|e| e.shape() != (out_dim, in_dim)) {
            return Err(Error::InvalidChannel("Kraus operators differ in shape".into()));
        }
        let mut sum = CMatrix::zeros(in_dim, in_dim);
        for e in &ops {
            sum += e.adjoint() * e;
        }
        let dev = linalg::max_abs_diff(&sum, &CMatrix::identity(in_dim, in_dim));
        if dev > COMPLETENESS_TOL {
            return Err(Error::InvalidChannel(format!(
                "not trace preserving (completeness deviation {dev:e})"
            )));
        }
        Ok(Self { in_dim, out_dim, ops })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            in_dim: dim,
            out_dim: dim,
            ops: vec![CMatrix::identity(dim, dim)],
        }
    }

    /// Qubit amplitude damping: `|1⟩ → |0⟩` with probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        check_unit_interval("gamma", gamma)?;
        let e0 = linalg::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - gamma).sqrt()]);
        let e1 = linalg::from_real(2, 2, &[0.0, gamma.sqrt(), 0.0, 0.0]);
        Ok(Self {
            in_dim: 2,
            out_dim: 2,
            ops: vec![e0, e1],
        })
    }

    /// Qubit depolarizing channel `ρ ↦ (1−p)ρ + p·1/2`.
    pub fn depolarizing(p: f64) -> Result<Self> {
        check_unit_interval("p", p)?;
        let w0 = (1.0 - 0.75 * p).sqrt();
        let w = (p / 4.0).sqrt();
        let id = linalg::from_real(2, 2, &[w0, 0.0, 0.0, w0]);
        let x = linalg::from_real(2, 2, &[0.0, w, w, 0.0]);
        let y = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -w), c(0.0, w), c(0.0, 0.0)]);
        let z = linalg::from_real(2, 2, &[w, 0.0, 0.0, -w]);
        Ok(Self {
            in_dim: 2,
            out_dim: 2,
            ops: vec![id, x, y, z],
        })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    /// Number of Kraus operators, i.e. the environment dimension of the
    /// isometric extension.
    pub fn env_dim(&self) -> usize {
        self.ops.len()
    }

    pub fn kraus_ops(&self) -> &[CMatrix] {
        &self.ops
    }

    /// `Σ_j E_j ρ E_j†`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_input(rho)?;
        Ok(DensityMatrix::new_unchecked(self.apply_raw(rho.matrix())))
    }

    pub(crate) fn apply_raw(&self, rho: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.out_dim, self.out_dim);
        for e in &self.ops {
            out += e * rho * e.adjoint();
        }
        linalg::hermitian_part(&out)
    }

    /// Stinespring isometry `U = Σ_j E_j ⊗ |j⟩^E`, shape `(out·env) × in`
    /// with the output factor first.
    pub fn isometric_extension(&self) -> CMatrix {
        let env = self.env_dim();
        CMatrix::from_fn(self.out_dim * env, self.in_dim, |row, col| {
            let (b, j) = (row / env, row % env);
            self.ops[j][(b, col)]
        })
    }

    /// `Tr_B(U ρ U†)`, the state handed to the environment.
    pub fn complementary(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_input(rho)?;
        let u = self.isometric_extension();
        let joint = &u * rho.matrix() * u.adjoint();
        let env = linalg::partial_trace(&joint, self.out_dim, self.env_dim(), Keep::Second);
        Ok(DensityMatrix::new_unchecked(linalg::hermitian_part(&env)))
    }

    fn check_input(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.in_dim {
            return Err(Error::DimensionMismatch {
                expected: self.in_dim,
                found: rho.dim(),
            });
        }
        Ok(())
    }
}
