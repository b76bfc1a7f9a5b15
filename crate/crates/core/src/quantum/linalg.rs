//! Small dense complex linear algebra on top of `nalgebra`.
//!
//! Dimensions in this crate never exceed a few dozen, so everything goes
//! through a full Hermitian eigen-decomposition.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Which factor of a bipartite space `first ⊗ second` to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    CMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| c(x, 0.0)))
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Eigenvalues (ascending) and matching eigenvectors of the Hermitian part of `m`.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), m.ncols(), |r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Applies `f` to the spectrum of a Hermitian matrix.
pub fn spectral_map(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| c(f(v), 0.0)),
    ));
    &vectors * diag * vectors.adjoint()
}

/// Square root of a positive semi-definite matrix; negative eigenvalues are clamped.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    spectral_map(m, |v| v.max(0.0).sqrt())
}

/// Sum of the absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).iter().map(|v| v.abs()).sum()
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    let gram = m.adjoint() * m;
    hermitian_eigenvalues(&gram)
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(0.0)
        .sqrt()
}

/// ‖√a √b‖₁ for positive semi-definite `a`, `b`, from the spectrum of
/// the Gram matrix √b a √b.
pub fn sqrt_product_trace_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    let sb = psd_sqrt(b);
    let gram = &sb * a * &sb;
    hermitian_eigenvalues(&gram)
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .sum()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Partial trace of an operator on `C^d1 ⊗ C^d2`.
pub fn partial_trace(m: &CMatrix, d1: usize, d2: usize, keep: Keep) -> CMatrix {
    debug_assert_eq!(m.nrows(), d1 * d2);
    match keep {
        Keep::First => CMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| m[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Keep::Second => CMatrix::from_fn(d2, d2, |i, j| {
            (0..d1).map(|k| m[(k * d2 + i, k * d2 + j)]).sum()
        }),
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
