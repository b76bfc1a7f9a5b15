//! Distance measures, purification and von Neumann entropy.

use nalgebra::DVector;

use super::linalg::{self, c};
use super::state::{DensityMatrix, PureState};
use crate::error::{Error, Result};

/// Eigenvalues below this are treated as exact zeros inside logarithms.
pub const EIGEN_CLAMP: f64 = 1e-12;

fn same_dim(rho: &DensityMatrix, tau: &DensityMatrix) -> Result<()> {
    if rho.dim() == tau.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: tau.dim(),
        })
    }
}

/// Generalised trace distance `max{Tr{ρ−τ}₊, Tr{τ−ρ}₊}`.
pub fn trace_distance(rho: &DensityMatrix, tau: &DensityMatrix) -> Result<f64> {
    same_dim(rho, tau)?;
    let values = linalg::hermitian_eigenvalues(&(rho.matrix() - tau.matrix()));
    let pos: f64 = values.iter().filter(|&&v| v > 0.0).sum();
    let neg: f64 = -values.iter().filter(|&&v| v < 0.0).sum::<f64>();
    Ok(pos.max(neg).clamp(0.0, 1.0))
}

/// Generalised fidelity `‖√ρ√τ‖₁ + √((1−Tr ρ)(1−Tr τ))`.
pub fn generalized_fidelity(rho: &DensityMatrix, tau: &DensityMatrix) -> Result<f64> {
    same_dim(rho, tau)?;
    let overlap = linalg::sqrt_product_trace_norm(rho.matrix(), tau.matrix());
    let deficit = ((1.0 - rho.trace()).max(0.0) * (1.0 - tau.trace()).max(0.0)).sqrt();
    Ok((overlap + deficit).clamp(0.0, 1.0))
}

/// Purified distance `√(1 − F²)`.
pub fn purified_distance(rho: &DensityMatrix, tau: &DensityMatrix) -> Result<f64> {
    let f = generalized_fidelity(rho, tau)?;
    Ok((1.0 - f * f).max(0.0).sqrt())
}

/// Purification `Σ_x √λ_x |x⟩^R |v_x⟩^A` on `R ⊗ A`, reference system first.
pub fn purify(rho: &DensityMatrix) -> Result<PureState> {
    rho.require_normalised()?;
    let d = rho.dim();
    let (values, vectors) = linalg::hermitian_eigen(rho.matrix());
    let mut amps = DVector::zeros(d * d);
    for (x, &lambda) in values.iter().enumerate() {
        let w = lambda.max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        for a in 0..d {
            amps[x * d + a] += vectors[(a, x)] * c(w, 0.0);
        }
    }
    Ok(PureState::new_unchecked(amps))
}

/// `−Σ λ log₂ λ` over the given spectrum, with `0 log 0 = 0`.
pub fn spectrum_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .map(|&v| v.clamp(0.0, 1.0))
        .filter(|&v| v > EIGEN_CLAMP)
        .map(|v| -v * v.log2())
        .sum::<f64>()
        .max(0.0)
}

/// von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    rho.require_normalised()?;
    Ok(spectrum_entropy(&rho.eigenvalues()))
}
