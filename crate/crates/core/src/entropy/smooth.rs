//! Smoothed classical min/max entropies.
//!
//! The smoothing ball is the set of normalised distributions within
//! statistical distance `eps` of `P`. Both optimisers are water-filling
//! moves on the sorted probabilities:
//!
//! * `H_min^ε`: cut the largest atoms down to a common cap, spending exactly
//!   `eps` of mass (the mass is re-deposited below the cap), so the
//!   entropy is `−log₂ cap`. The cap never goes below `1/|X|`.
//! * `H_max^ε`: strip `eps` of mass from the smallest atoms and put it on
//!   the largest one.

use super::classical::{max_entropy_of, min_entropy, surprisal};
use super::distribution::DiscreteDistribution;
use crate::error::{Error, Result};

fn check_eps(eps: f64) -> Result<()> {
    if (0.0..1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name: "eps", value: eps })
    }
}

/// Smallest achievable `max_x Q(x)` over the smoothing ball.
fn smoothed_peak(probs: &[f64], eps: f64) -> f64 {
    let mut sorted = probs.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let floor = 1.0 / sorted.len() as f64;
    let mut head = 0.0;
    for j in 0..sorted.len() {
        head += sorted[j];
        let cap = (head - eps) / (j + 1) as f64;
        let next = sorted.get(j + 1).copied().unwrap_or(f64::NEG_INFINITY);
        if cap >= next {
            return cap.max(floor);
        }
    }
    floor
}

pub fn smooth_min_entropy_classical(p: &DiscreteDistribution, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if eps == 0.0 {
        return min_entropy(p);
    }
    p.require_normalised()?;
    Ok(surprisal(smoothed_peak(p.probs(), eps)).max(0.0))
}

/// The steepest distribution in the smoothing ball.
fn steepest(probs: &[f64], eps: f64) -> Vec<f64> {
    let mut sorted = probs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut budget = eps;
    let last = sorted.len() - 1;
    for q in sorted[..last].iter_mut() {
        let take = q.min(budget);
        *q -= take;
        budget -= take;
        if budget <= 0.0 {
            break;
        }
    }
    sorted[last] += eps - budget;
    sorted
}

pub fn smooth_max_entropy_classical(p: &DiscreteDistribution, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    p.require_normalised()?;
    if eps == 0.0 {
        return Ok(max_entropy_of(p.probs()));
    }
    Ok(max_entropy_of(&steepest(p.probs(), eps)))
}

/// Gallagher bound on the minimal code length:
/// `H_max^{ε₁}(X) + log₂(1/ε₂) + 1`.
pub fn gallagher_bound(p: &DiscreteDistribution, eps1: f64, eps2: f64) -> Result<f64> {
    if !(eps2 > 0.0 && eps2 <= 1.0) {
        return Err(Error::OutOfRange { name: "eps2", value: eps2 });
    }
    Ok(smooth_max_entropy_classical(p, eps1)? + surprisal(eps2) + 1.0)
}
