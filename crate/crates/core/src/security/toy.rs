use crate::error::{Error, Result};
use crate::quantum::linalg::{self, CMatrix};
use crate::quantum::{DensityMatrix, Keep};

/// Largest joint dimension accepted by [`secrecy_distance_toy`].
pub const TOY_MAX_DIM: usize = 32;

/// `½‖ρ_KE − τ_K ⊗ ρ_E‖₁` for an `l`-bit key register `K` (most
/// significant) and side information `E`, with `τ_K` uniform.
pub fn secrecy_distance_toy(rho_ke: &DensityMatrix, l: u32) -> Result<f64> {
    let dim = rho_ke.dim();
    if dim > TOY_MAX_DIM {
        return Err(Error::OutOfRange {
            name: "dimension",
            value: dim as f64,
        });
    }
    let dim_k = 1usize << l;
    if dim % dim_k != 0 {
        return Err(Error::DimensionMismatch {
            expected: dim_k,
            found: dim,
        });
    }
    let dim_e = dim / dim_k;
    let rho_e = linalg::partial_trace(rho_ke.matrix(), dim_k, dim_e, Keep::Second);
    let tau = CMatrix::identity(dim_k, dim_k).unscale(dim_k as f64);
    let ideal = linalg::kron(&tau, &rho_e);
    Ok(0.5 * linalg::trace_norm_hermitian(&(rho_ke.matrix() - ideal)))
}
