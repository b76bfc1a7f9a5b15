#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use qkd_core::quantum::{CMatrix, DensityMatrix, PureState};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    })
}

/// Random mixed state of the given dimension and trace.
pub fn random_state(dim: usize, trace: f64, rng: &mut impl Rng) -> DensityMatrix {
    let g = ginibre(dim, dim, rng);
    let m = &g * g.adjoint();
    let tr: f64 = (0..dim).map(|i| m[(i, i)].re).sum();
    DensityMatrix::new(m.unscale(tr / trace)).unwrap()
}

pub fn random_pure(dim: usize, rng: &mut impl Rng) -> PureState {
    let g = ginibre(dim, 1, rng);
    let norm = g.norm();
    PureState::new(g.iter().map(|z| z / norm).collect()).unwrap()
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let qr = ginibre(dim, dim, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&r.diagonal().map(|d| if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) }));
    q * phases
}

/// Random probability vector from exponential weights.
pub fn random_probs(len: usize, rng: &mut impl Rng) -> Vec<f64> {
    let w: Vec<f64> = (0..len).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = w.iter().sum();
    w.iter().map(|x| x / total).collect()
}
