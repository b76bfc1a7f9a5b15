use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `Σ p = 1`.
pub const NORMALISATION_TOL: f64 = 1e-12;

/// A probability mass function over `0..len`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteDistribution {
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let d = Self::sub_normalised(probs)?;
        let total = d.total();
        if (total - 1.0).abs() > NORMALISATION_TOL {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(d)
    }

    /// Allows `Σ p ≤ 1`.
    pub fn sub_normalised(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty alphabet".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidDistribution(format!("probability {p} outside [0, 1]")));
        }
        let total: f64 = probs.iter().sum();
        if total > 1.0 + NORMALISATION_TOL {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(Self { probs })
    }

    /// Normalises non-negative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || weights.iter().any(|w| *w < 0.0) {
            return Err(Error::InvalidDistribution("weights must be non-negative with positive sum".into()));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(size: usize) -> Self {
        Self {
            probs: vec![1.0 / size as f64; size],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub(crate) fn require_normalised(&self) -> Result<()> {
        let total = self.total();
        if (total - 1.0).abs() > NORMALISATION_TOL {
            Err(Error::InvalidDistribution(format!("not normalised (sum {total})")))
        } else {
            Ok(())
        }
    }

    /// Half the L1 distance.
    pub fn statistical_distance(&self, other: &Self) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(0.5 * self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).sum::<f64>())
    }
}

impl<'de> Deserialize<'de> for DiscreteDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let probs = Vec::<f64>::deserialize(d)?;
        DiscreteDistribution::new(probs).map_err(serde::de::Error::custom)
    }
}

/// Joint mass function `P_XY(x, y)`, rows indexed by `x`, columns by `y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointDistribution {
    rows: Vec<Vec<f64>>,
}

impl JointDistribution {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let ny = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || ny == 0 || rows.iter().any(|r| r.len() != ny) {
            return Err(Error::InvalidDistribution("joint table must be a non-empty rectangle".into()));
        }
        if let Some(p) = rows.iter().flatten().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidDistribution(format!("probability {p} outside [0, 1]")));
        }
        let total: f64 = rows.iter().flatten().sum();
        if (total - 1.0).abs() > NORMALISATION_TOL {
            return Err(Error::InvalidDistribution(format!("joint probabilities sum to {total}")));
        }
        Ok(Self { rows })
    }

    pub fn from_weights(weights: &[Vec<f64>]) -> Result<Self> {
        let total: f64 = weights.iter().flatten().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidDistribution("weights must have positive sum".into()));
        }
        Self::new(weights.iter().map(|r| r.iter().map(|w| w / total).collect()).collect())
    }

    /// `P_X ⊗ P_Y`.
    pub fn product(px: &DiscreteDistribution, py: &DiscreteDistribution) -> Self {
        Self {
            rows: px.probs().iter().map(|&a| py.probs().iter().map(|&b| a * b).collect()).collect(),
        }
    }

    pub fn nx(&self) -> usize {
        self.rows.len()
    }

    pub fn ny(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.rows[x][y]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn marginal_x(&self) -> DiscreteDistribution {
        DiscreteDistribution {
            probs: self.rows.iter().map(|r| r.iter().sum()).collect(),
        }
    }

    pub fn marginal_y(&self) -> DiscreteDistribution {
        DiscreteDistribution {
            probs: (0..self.ny()).map(|y| self.rows.iter().map(|r| r[y]).sum()).collect(),
        }
    }

    /// The joint table read as a single distribution over pairs.
    pub fn flattened(&self) -> DiscreteDistribution {
        DiscreteDistribution {
            probs: self.rows.iter().flatten().copied().collect(),
        }
    }
}

impl<'de> Deserialize<'de> for JointDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        JointDistribution::new(rows).map_err(serde::de::Error::custom)
    }
}
