//! Quantum capacity of the qubit amplitude damping channel.
//!
//! Inputs are written `ρ = [[1−a, b*], [b, a]]` with `a` the excited-state
//! population; note that `KrausChannel` examples elsewhere use
//! `[[a, b], [b*, 1−a]]`, i.e. `a ↔ 1−a`.
//!
//! The channel is degradable for `γ ≤ ½` (the degrading map is again an
//! amplitude damping channel), so its capacity is the maximal coherent
//! information, attained on diagonal inputs. Beyond `½` the single-letter
//! formula does not apply and points are reported with `degradable: false`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{check_unit_interval, Error, Result};
use crate::numeric::golden_section_max;
use crate::quantum::linalg::{self, c};
use crate::quantum::{spectrum_entropy, DensityMatrix, KrausChannel};
use crate::rng;

/// Tolerance on `|b|² ≤ a(1−a)`.
const PSD_SLACK: f64 = 1e-12;

fn check_input(gamma: f64, a: f64, b: Complex64) -> Result<()> {
    check_unit_interval("gamma", gamma)?;
    check_unit_interval("a", a)?;
    if b.norm_sqr() > a * (1.0 - a) + PSD_SLACK {
        return Err(Error::InvalidState(format!(
            "|b|² = {} exceeds a(1−a) = {}",
            b.norm_sqr(),
            a * (1.0 - a)
        )));
    }
    Ok(())
}

/// Output eigenvalues `λ_{±B}`.
pub fn bob_eigenvalues(gamma: f64, a: f64, b: Complex64) -> [f64; 2] {
    let d = ((1.0 + 2.0 * a * (gamma - 1.0)).powi(2) - 4.0 * b.norm_sqr() * (gamma - 1.0)).sqrt();
    [0.5 * (1.0 + d), 0.5 * (1.0 - d)]
}

/// Environment eigenvalues `λ_{±E}`.
pub fn eve_eigenvalues(gamma: f64, a: f64, b: Complex64) -> [f64; 2] {
    let d = ((1.0 - 2.0 * a * gamma).powi(2) + 4.0 * b.norm_sqr() * gamma).sqrt();
    [0.5 * (1.0 + d), 0.5 * (1.0 - d)]
}

/// `I(A⟩B) = H(𝓔(ρ)) − H(𝓔^c(ρ))`.
pub fn coherent_information(gamma: f64, a: f64, b: Complex64) -> Result<f64> {
    check_input(gamma, a, b)?;
    Ok(coherent_information_unchecked(gamma, a, b))
}

fn coherent_information_unchecked(gamma: f64, a: f64, b: Complex64) -> f64 {
    spectrum_entropy(&bob_eigenvalues(gamma, a, b)) - spectrum_entropy(&eve_eigenvalues(gamma, a, b))
}

/// The input state `[[1−a, b*], [b, a]]`.
pub fn input_state(a: f64, b: Complex64) -> Result<DensityMatrix> {
    check_input(0.0, a, b)?;
    DensityMatrix::new(linalg::CMatrix::from_row_slice(
        2,
        2,
        &[c(1.0 - a, 0.0), b.conj(), b, c(a, 0.0)],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityPoint {
    pub gamma: f64,
    /// Capacity; zero where the channel is not degradable.
    pub q: f64,
    pub a_star: f64,
    /// Unclamped maximum of `I(A⟩B)` over diagonal inputs.
    pub max_coherent_info: f64,
    /// Whether the single-letter formula applies (`γ ≤ ½`).
    pub degradable: bool,
}

const GOLDEN_TOL: f64 = 1e-10;

/// Maximises `I(A⟩B)` over diagonal inputs.
pub fn maximize_coherent_information(gamma: f64) -> Result<CapacityPoint> {
    check_unit_interval("gamma", gamma)?;
    let zero = Complex64::new(0.0, 0.0);
    let degradable = gamma <= 0.5;
    if gamma >= 0.5 {
        // I(a) ≤ 0 with equality at a = 0; the capacity floor is 0
        return Ok(CapacityPoint {
            gamma,
            q: 0.0,
            a_star: 0.0,
            max_coherent_info: 0.0,
            degradable,
        });
    }
    let (a_star, max) = golden_section_max(|a| coherent_information_unchecked(gamma, a, zero), 0.0, 1.0, GOLDEN_TOL);
    Ok(CapacityPoint {
        gamma,
        q: max.max(0.0),
        a_star,
        max_coherent_info: max,
        degradable,
    })
}

pub fn capacity_sweep(gamma_grid: &[f64]) -> Result<Vec<CapacityPoint>> {
    gamma_grid.iter().map(|&g| maximize_coherent_information(g)).collect()
}

/// `(a, I(A⟩B))` on diagonal inputs.
pub fn coherent_info_curve(gamma: f64, a_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_unit_interval("gamma", gamma)?;
    a_grid
        .iter()
        .map(|&a| Ok((a, coherent_information(gamma, a, Complex64::new(0.0, 0.0))?)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalReport {
    pub gamma: f64,
    pub trials: usize,
    /// Trials with `I(a, b) > I(a, 0) + 1e-9`.
    pub violations: usize,
    /// `max (I(a, b) − I(a, 0))`, possibly negative.
    pub max_excess: f64,
}

pub const DIAGONAL_TOL: f64 = 1e-9;

/// Samples random coherent inputs and compares them with their diagonal part.
///
/// `|b|` is drawn uniformly up to the pure-state boundary `√(a(1−a))` with a
/// uniform phase.
pub fn verify_diagonal_optimality(gamma: f64, trials: usize, seed: u64) -> Result<DiagonalReport> {
    check_unit_interval("gamma", gamma)?;
    let mut rng = rng::stream(seed, "diagonal-optimality");
    let mut report = DiagonalReport {
        gamma,
        trials,
        violations: 0,
        max_excess: f64::NEG_INFINITY,
    };
    for _ in 0..trials {
        let a: f64 = rng.random();
        let radius = (a * (1.0 - a)).sqrt() * (1.0 - rng.random::<f64>());
        let b = Complex64::from_polar(radius, std::f64::consts::TAU * rng.random::<f64>());
        let excess = coherent_information_unchecked(gamma, a, b)
            - coherent_information_unchecked(gamma, a, Complex64::new(0.0, 0.0));
        if excess > DIAGONAL_TOL {
            report.violations += 1;
        }
        report.max_excess = report.max_excess.max(excess);
    }
    Ok(report)
}

/// Analytic degradability condition `γ ≤ ½`.
pub fn is_degradable_ad(gamma: f64) -> Result<bool> {
    check_unit_interval("gamma", gamma)?;
    Ok(gamma <= 0.5)
}

/// `γ′ = (1−2γ)/(1−γ)`, so that `AD(γ′) ∘ AD(γ) = AD(1−γ) = AD(γ)^c`.
pub fn degrading_parameter(gamma: f64) -> Option<f64> {
    (gamma <= 0.5).then(|| (1.0 - 2.0 * gamma) / (1.0 - gamma))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegradabilityReport {
    pub gamma: f64,
    pub degradable: bool,
    pub gamma_prime: Option<f64>,
    /// Largest entry-wise deviation of `𝓣∘𝓝` from `𝓝^c` over the samples.
    pub max_residual: Option<f64>,
}

/// Max entry-wise gap between `AD(γ′)∘AD(γ)` and the complementary channel
/// of `AD(γ)` over `samples` random inputs.
pub fn composition_residual(gamma: f64, gamma_prime: f64, samples: usize, seed: u64) -> Result<f64> {
    let n = KrausChannel::amplitude_damping(gamma)?;
    let t = KrausChannel::amplitude_damping(gamma_prime)?;
    let mut rng = rng::stream(seed, "degradability");
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a: f64 = rng.random();
        let radius = (a * (1.0 - a)).sqrt() * rng.random::<f64>();
        let b = Complex64::from_polar(radius, std::f64::consts::TAU * rng.random::<f64>());
        let rho = input_state(a, b)?;
        let degraded = t.apply(&n.apply(&rho)?)?;
        let env = n.complementary(&rho)?;
        worst = worst.max(linalg::max_abs_diff(degraded.matrix(), env.matrix()));
    }
    Ok(worst)
}

/// Checks the degrading map numerically on 20 random inputs.
pub fn degradability_report(gamma: f64, seed: u64) -> Result<DegradabilityReport> {
    let degradable = is_degradable_ad(gamma)?;
    let gamma_prime = degrading_parameter(gamma);
    let max_residual = gamma_prime.map(|gp| composition_residual(gamma, gp, 20, seed)).transpose()?;
    Ok(DegradabilityReport {
        gamma,
        degradable,
        gamma_prime,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::von_neumann_entropy;

    fn h(x: f64) -> f64 {
        spectrum_entropy(&[x, 1.0 - x])
    }

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn coherent_information_cases() {
        assert!((coherent_information(0.0, 0.5, ZERO).unwrap() - 1.0).abs() < 1e-12);
        for i in 0..=20 {
            let a = i as f64 / 20.0;
            assert!(coherent_information(0.5, a, ZERO).unwrap().abs() < 1e-12);
        }
        let i = coherent_information(0.25, 0.5, ZERO).unwrap();
        assert!((i - (h(0.375) - h(0.125))).abs() < 1e-12);
        assert!((i - 0.410870).abs() < 1e-6);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(coherent_information(1.5, 0.5, ZERO).is_err());
        assert!(coherent_information(0.2, 0.5, Complex64::new(0.6, 0.0)).is_err());
        assert!(maximize_coherent_information(-0.1).is_err());
    }

    #[test]
    fn closed_form_matches_channel_path() {
        let mut rng = rng::stream(11, "test");
        for _ in 0..1000 {
            let gamma: f64 = rng.random();
            let a: f64 = rng.random();
            let radius = (a * (1.0 - a)).sqrt() * rng.random::<f64>();
            let b = Complex64::from_polar(radius, std::f64::consts::TAU * rng.random::<f64>());
            let ch = KrausChannel::amplitude_damping(gamma).unwrap();
            let rho = input_state(a, b).unwrap();
            let out = ch.apply(&rho).unwrap();
            let env = ch.complementary(&rho).unwrap();
            let mut eb = out.eigenvalues();
            eb.reverse();
            let mut ee = env.eigenvalues();
            ee.reverse();
            let [b_plus, b_minus] = bob_eigenvalues(gamma, a, b);
            let [e_plus, e_minus] = eve_eigenvalues(gamma, a, b);
            assert!((eb[0] - b_plus).abs() < 1e-9 && (eb[1] - b_minus).abs() < 1e-9);
            assert!((ee[0] - e_plus).abs() < 1e-9 && (ee[1] - e_minus).abs() < 1e-9);
            let via_channel = von_neumann_entropy(&out).unwrap() - von_neumann_entropy(&env).unwrap();
            assert!((coherent_information(gamma, a, b).unwrap() - via_channel).abs() < 1e-9);
        }
    }

    #[test]
    fn diagonal_reduction() {
        for (gamma, a) in [(0.1, 0.3), (0.4, 0.9), (0.7, 0.2)] {
            let mut bob = bob_eigenvalues(gamma, a, ZERO);
            let mut eve = eve_eigenvalues(gamma, a, ZERO);
            bob.sort_by(f64::total_cmp);
            eve.sort_by(f64::total_cmp);
            let mut bob_exp = [(1.0 - gamma) * a, 1.0 - (1.0 - gamma) * a];
            let mut eve_exp = [gamma * a, 1.0 - gamma * a];
            bob_exp.sort_by(f64::total_cmp);
            eve_exp.sort_by(f64::total_cmp);
            for i in 0..2 {
                assert!((bob[i] - bob_exp[i]).abs() < 1e-15);
                assert!((eve[i] - eve_exp[i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn maximisation_cases() {
        let p = maximize_coherent_information(0.0).unwrap();
        assert!((p.q - 1.0).abs() < 1e-12 && (p.a_star - 0.5).abs() < 1e-6);
        let p = maximize_coherent_information(0.5).unwrap();
        assert_eq!(p.q, 0.0);
        assert!(p.degradable);
        let p = maximize_coherent_information(0.8).unwrap();
        assert_eq!(p.q, 0.0);
        assert!(!p.degradable);

        let gamma = 0.25;
        let (mut best_a, mut best) = (0.0, f64::NEG_INFINITY);
        for i in 0..=1_000_000 {
            let a = i as f64 / 1e6;
            let v = h((1.0 - gamma) * a) - h(gamma * a);
            if v > best {
                best = v;
                best_a = a;
            }
        }
        let p = maximize_coherent_information(gamma).unwrap();
        assert!((p.q - best).abs() < 1e-8);
        assert!((p.a_star - best_a).abs() < 1e-5);
    }

    #[test]
    fn concavity_below_half() {
        for gamma in [0.05, 0.2, 0.35, 0.49] {
            let i = |a: f64| coherent_information(gamma, a, ZERO).unwrap();
            let step = 1e-3;
            for j in 1..1000 {
                let a = j as f64 * step;
                let second = i(a - step) - 2.0 * i(a) + i(a + step);
                assert!(second <= 1e-9, "γ={gamma}, a={a}: {second}");
            }
        }
    }

    #[test]
    fn sweep_cases() {
        let p = capacity_sweep(&[0.0]).unwrap();
        assert!((p[0].q - 1.0).abs() < 1e-12 && (p[0].a_star - 0.5).abs() < 1e-6);
        let high: Vec<f64> = (5..=10).map(|i| i as f64 / 10.0).collect();
        assert!(capacity_sweep(&high).unwrap().iter().all(|p| p.q == 0.0));
        let low: Vec<f64> = (0..=10).map(|i| i as f64 * 0.05).collect();
        let pts = capacity_sweep(&low).unwrap();
        for w in pts.windows(2) {
            assert!(w[1].q <= w[0].q + 1e-9);
        }
    }

    #[test]
    fn curve_cases() {
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
        assert!(coherent_info_curve(0.5, &grid).unwrap().iter().all(|(_, i)| i.abs() < 1e-12));
        for (a, i) in coherent_info_curve(0.0, &grid).unwrap() {
            assert!((i - h(a)).abs() < 1e-12);
        }
        for (a, i) in coherent_info_curve(0.75, &grid).unwrap() {
            if a == 0.0 || a == 1.0 {
                assert!(i.abs() < 1e-12);
            } else {
                assert!(i < 0.0, "a={a}: {i}");
            }
        }
    }

    #[test]
    fn diagonal_inputs_are_optimal() {
        let r = verify_diagonal_optimality(0.1, 10_000, 1).unwrap();
        assert_eq!(r.violations, 0);
        // pure-state boundary
        for gamma in [0.1, 0.3] {
            for i in 1..100 {
                let a = i as f64 / 100.0;
                for k in 0..8 {
                    let b = Complex64::from_polar((a * (1.0 - a)).sqrt(), k as f64 * 0.785);
                    let excess = coherent_information(gamma, a, b).unwrap() - coherent_information(gamma, a, ZERO).unwrap();
                    assert!(excess <= DIAGONAL_TOL);
                }
            }
        }
    }

    #[test]
    fn degradability_cases() {
        assert!(is_degradable_ad(0.0).unwrap());
        let r = degradability_report(0.3, 5).unwrap();
        assert!(r.degradable);
        assert!(r.max_residual.unwrap() < 1e-8);
        assert!((r.gamma_prime.unwrap() - 0.4 / 0.7).abs() < 1e-15);

        assert!(!is_degradable_ad(0.7).unwrap());
        let best = (0..=1000)
            .map(|i| composition_residual(0.7, i as f64 / 1000.0, 20, 5).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(best > 1e-8, "{best}");
    }
}
