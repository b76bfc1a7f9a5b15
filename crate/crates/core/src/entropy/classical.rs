use super::distribution::{DiscreteDistribution, JointDistribution};
use crate::error::{Error, Result};

/// Surprisal `i(p) = −log₂ p` of an event with probability `p`.
pub fn surprisal(p: f64) -> f64 {
    -p.log2()
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy `H(X)` in bits.
pub fn shannon_entropy(p: &DiscreteDistribution) -> Result<f64> {
    p.require_normalised()?;
    Ok(p.probs().iter().map(|&x| plogp(x)).sum::<f64>().max(0.0))
}

/// `H(X|Y) = −Σ P(x,y) log P(x|y)`; columns with `P_Y(y) = 0` are skipped.
pub fn conditional_entropy(pxy: &JointDistribution) -> Result<f64> {
    let py = pxy.marginal_y();
    let mut h = 0.0;
    for row in pxy.rows() {
        for (y, &p) in row.iter().enumerate() {
            let q = py.probs()[y];
            if p > 0.0 && q > 0.0 {
                h -= p * (p / q).log2();
            }
        }
    }
    Ok(h.max(0.0))
}

/// Relative entropy `D(P‖Q)`; `f64::INFINITY` when `supp P ⊄ supp Q`.
pub fn relative_entropy(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    let mut d = 0.0;
    for (&a, &b) in p.probs().iter().zip(q.probs()) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Ok(f64::INFINITY);
        }
        d += a * (a / b).log2();
    }
    Ok(d.max(0.0))
}

/// `I(X:Y) = D(P_XY ‖ P_X ⊗ P_Y)`.
pub fn mutual_information(pxy: &JointDistribution) -> Result<f64> {
    let product = JointDistribution::product(&pxy.marginal_x(), &pxy.marginal_y());
    relative_entropy(&pxy.flattened(), &product.flattened())
}

/// `H_min(X) = −log₂ max_x P(x)`.
pub fn min_entropy(p: &DiscreteDistribution) -> Result<f64> {
    p.require_normalised()?;
    let pmax = p.probs().iter().copied().fold(0.0, f64::max);
    Ok(surprisal(pmax).max(0.0))
}

/// `H_max(X) = 2 log₂ Σ √P(x)`.
pub fn max_entropy(p: &DiscreteDistribution) -> Result<f64> {
    p.require_normalised()?;
    Ok(max_entropy_of(p.probs()))
}

pub(crate) fn max_entropy_of(probs: &[f64]) -> f64 {
    let s: f64 = probs.iter().map(|x| x.max(0.0).sqrt()).sum();
    (2.0 * s.log2()).max(0.0)
}

/// Optimal guessing probability `Σ_y max_x P(x, y)`.
pub fn guessing_probability(pxy: &JointDistribution) -> f64 {
    (0..pxy.ny())
        .map(|y| pxy.rows().iter().map(|r| r[y]).fold(0.0, f64::max))
        .sum()
}

/// `H_min(X|Y) = −log₂ Σ_y P_Y(y) 2^{−H_min(X)_{P^y}}`, i.e. minus the log of
/// the guessing probability.
pub fn conditional_min_entropy_classical(pxy: &JointDistribution) -> Result<f64> {
    Ok(surprisal(guessing_probability(pxy)).max(0.0))
}
