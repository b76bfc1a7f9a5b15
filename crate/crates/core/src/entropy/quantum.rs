//! Quantum conditional min- and max-entropy for a qubit (or trivial)
//! conditioning system.
//!
//! The optimisation over `σ_B` runs on the Bloch ball: a coarse grid over
//! `(r, θ, φ)` followed by Nelder–Mead refinement from the best grid point
//! and from a few seeded random starts.

use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::nelder_mead;
use crate::quantum::linalg::{self, c, CMatrix};
use crate::quantum::{DensityMatrix, Keep};
use crate::rng;

/// Settings for the Bloch-ball search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochSearch {
    /// Grid points per Bloch coordinate.
    pub grid: usize,
    /// Nelder–Mead convergence tolerance.
    pub tol: f64,
    /// Extra refinement runs from random starting points.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for BlochSearch {
    fn default() -> Self {
        Self {
            grid: 32,
            tol: 1e-6,
            restarts: 2,
            seed: 0x5eed,
        }
    }
}

/// Largest Bloch radius used where `σ^{-1/2}` must stay finite.
const MAX_RADIUS: f64 = 1.0 - 1e-9;

fn bloch_state(v: &[f64]) -> CMatrix {
    let (x, y, z) = (v[0], v[1], v[2]);
    CMatrix::from_row_slice(
        2,
        2,
        &[c(0.5 * (1.0 + z), 0.0), c(0.5 * x, -0.5 * y), c(0.5 * x, 0.5 * y), c(0.5 * (1.0 - z), 0.0)],
    )
}

fn project_into_ball(v: &[f64], radius: f64) -> [f64; 3] {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if r <= radius {
        [v[0], v[1], v[2]]
    } else {
        let s = radius / r;
        [v[0] * s, v[1] * s, v[2] * s]
    }
}

fn largest_eigenvalue(m: &CMatrix) -> f64 {
    linalg::hermitian_eigenvalues(m).last().copied().unwrap_or(0.0)
}

/// `‖(1 ⊗ σ^{-1/2}) ρ (1 ⊗ σ^{-1/2})‖_∞` for a full-rank `σ`.
fn min_entropy_objective(rho: &CMatrix, dim_a: usize, sigma: &CMatrix) -> f64 {
    let inv_sqrt = linalg::spectral_map(sigma, |v| 1.0 / v.max(f64::MIN_POSITIVE).sqrt());
    let s = linalg::kron(&CMatrix::identity(dim_a, dim_a), &inv_sqrt);
    largest_eigenvalue(&(&s * rho * &s))
}

/// Minimises `objective` over the Bloch ball (radius `radius`).
fn bloch_minimise(objective: impl Fn(&CMatrix) -> f64, radius: f64, opts: &BlochSearch) -> f64 {
    let n = opts.grid.max(2);
    let mut best = (f64::INFINITY, [0.0; 3]);
    for i in 0..n {
        let r = radius * (i as f64 + 0.5) / n as f64;
        for j in 0..n {
            let theta = std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
            for k in 0..n {
                let phi = std::f64::consts::TAU * k as f64 / n as f64;
                let v = [r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin(), r * theta.cos()];
                let f = objective(&bloch_state(&v));
                if f < best.0 {
                    best = (f, v);
                }
            }
        }
    }
    let f = |v: &[f64]| objective(&bloch_state(&project_into_ball(v, radius)));
    let mut value = best.0;
    let mut starts = vec![best.1];
    let mut rng = rng::stream(opts.seed, "bloch-restarts");
    for _ in 0..opts.restarts {
        let v = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        starts.push(project_into_ball(&v, radius * 0.9));
    }
    for start in starts {
        let m = nelder_mead(&f, &start, 0.5 / n as f64, opts.tol, 20_000);
        value = value.min(m.value);
    }
    value
}

fn check_dims(rho_ab: &DensityMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    if dim_a * dim_b != rho_ab.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho_ab.dim(),
            found: dim_a * dim_b,
        });
    }
    if dim_b > 2 || dim_b == 0 {
        return Err(Error::OutOfRange {
            name: "dim_b",
            value: dim_b as f64,
        });
    }
    Ok(())
}

/// `H_min(A|B)_ρ = max_σ −log₂ ‖σ_B^{-1/2} ρ_AB σ_B^{-1/2}‖_∞`.
///
/// When `ρ_B` is rank one the support-restricted candidate `σ = Π_supp(ρ_B)`
/// is evaluated in addition to the full-rank search.
pub fn quantum_conditional_min_entropy(
    rho_ab: &DensityMatrix,
    dim_a: usize,
    dim_b: usize,
    opts: &BlochSearch,
) -> Result<f64> {
    check_dims(rho_ab, dim_a, dim_b)?;
    let rho = rho_ab.matrix();
    if dim_b == 1 {
        return Ok(-largest_eigenvalue(rho).log2());
    }
    let mut best = bloch_minimise(|s| min_entropy_objective(rho, dim_a, s), MAX_RADIUS, opts);

    let rho_b = linalg::partial_trace(rho, dim_a, dim_b, Keep::Second);
    let (values, vectors) = linalg::hermitian_eigen(&rho_b);
    if values[0] <= 1e-12 * values[1].max(1e-300) {
        let u = vectors.column(1).into_owned();
        let proj = &u * u.adjoint();
        let p = linalg::kron(&CMatrix::identity(dim_a, dim_a), &proj);
        best = best.min(largest_eigenvalue(&(&p * rho * &p)));
    }
    Ok(-best.log2())
}

/// `H_max(A|B)_ρ = 2 log₂ max_σ ‖√ρ_AB √(1_A ⊗ σ_B)‖₁`.
pub fn quantum_conditional_max_entropy(
    rho_ab: &DensityMatrix,
    dim_a: usize,
    dim_b: usize,
    opts: &BlochSearch,
) -> Result<f64> {
    check_dims(rho_ab, dim_a, dim_b)?;
    let rho = rho_ab.matrix();
    let id_a = CMatrix::identity(dim_a, dim_a);
    if dim_b == 1 {
        let f = linalg::sqrt_product_trace_norm(rho, &id_a);
        return Ok(2.0 * f.log2());
    }
    let neg_fidelity = |sigma: &CMatrix| -linalg::sqrt_product_trace_norm(rho, &linalg::kron(&id_a, sigma));
    let best = -bloch_minimise(neg_fidelity, 1.0, opts);
    Ok(2.0 * best.log2())
}
