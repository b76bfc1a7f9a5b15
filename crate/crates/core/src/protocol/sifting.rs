use rand::Rng;
use serde::{Deserialize, Serialize};

use super::bits::hamming_distance;
use crate::error::{Error, Result};

/// Outcome of one protocol test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Pass,
    Abort,
    /// Not reached because an earlier step aborted.
    Skipped,
}

impl Flag {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Flag::Pass
        } else {
            Flag::Abort
        }
    }

    pub fn passed(self) -> bool {
        self == Flag::Pass
    }
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flag::Pass => "pass",
            Flag::Abort => "abort",
            Flag::Skipped => "skipped",
        })
    }
}

/// The first `m_required` conclusive indices (ascending) where the bases
/// agree; aborts with an empty set if there are fewer.
pub fn sift(phi_a: &[bool], phi_b: &[bool], omega: &[usize], m_required: usize) -> (Vec<usize>, Flag) {
    let sigma: Vec<usize> = omega
        .iter()
        .copied()
        .filter(|&i| phi_a[i] == phi_b[i])
        .take(m_required)
        .collect();
    if sigma.len() < m_required {
        (Vec::new(), Flag::Abort)
    } else {
        (sigma, Flag::Pass)
    }
}

/// Result of sacrificing a random sample to estimate the QBER.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub qber: f64,
    pub flag: Flag,
    /// Positions (into the sifted strings) that were disclosed, ascending.
    pub sample: Vec<usize>,
    /// The undisclosed remainder of Alice's string.
    pub key_a: Vec<bool>,
    pub key_b: Vec<bool>,
}

/// Chooses `k` positions by a partial Fisher–Yates shuffle, compares them
/// and removes them from the key material.
pub fn estimate_parameters(x_a: &[bool], x_b: &[bool], k: usize, delta: f64, rng: &mut impl Rng) -> Result<Estimate> {
    if x_a.len() != x_b.len() {
        return Err(Error::DimensionMismatch {
            expected: x_a.len(),
            found: x_b.len(),
        });
    }
    if k == 0 || k > x_a.len() {
        return Err(Error::InvalidConfig(format!(
            "sample size {k} must lie in 1..={}",
            x_a.len()
        )));
    }
    let mut idx: Vec<usize> = (0..x_a.len()).collect();
    for i in 0..k {
        let j = rng.random_range(i..idx.len());
        idx.swap(i, j);
    }
    let mut sample = idx[..k].to_vec();
    sample.sort_unstable();
    let mut in_sample = vec![false; x_a.len()];
    for &i in &sample {
        in_sample[i] = true;
    }
    let pick = |x: &[bool], keep: bool| -> Vec<bool> {
        x.iter()
            .zip(&in_sample)
            .filter(|(_, &s)| s != keep)
            .map(|(&b, _)| b)
            .collect()
    };
    let errors = hamming_distance(&pick(x_a, false), &pick(x_b, false));
    let qber = errors as f64 / k as f64;
    Ok(Estimate {
        qber,
        flag: Flag::from_pass(qber <= delta),
        sample,
        key_a: pick(x_a, true),
        key_b: pick(x_b, true),
    })
}
