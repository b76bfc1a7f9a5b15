use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::security::SecurityBudget;

/// Quantum channel between Alice and Bob.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelModel {
    Ideal,
    Depolarizing { p: f64 },
    AmplitudeDamping { gamma: f64 },
    /// Eve measures a `fraction` of the signals in a random basis and
    /// resends the observed eigenstate.
    InterceptResend { fraction: f64 },
}

impl ChannelModel {
    pub fn validate(&self) -> Result<()> {
        let (name, v) = match *self {
            ChannelModel::Ideal => return Ok(()),
            ChannelModel::Depolarizing { p } => ("p", p),
            ChannelModel::AmplitudeDamping { gamma } => ("gamma", gamma),
            ChannelModel::InterceptResend { fraction } => ("fraction", fraction),
        };
        crate::error::check_unit_interval(name, v)
    }
}

/// Failure probabilities; omitted fields get defaults derived from `eps`
/// and the hash length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Epsilons {
    pub eps: f64,
    /// Defaults to `2^{-t}`.
    #[serde(default)]
    pub eps_ec: Option<f64>,
    /// Defaults to `(eps − eps_ec)/2`.
    #[serde(default)]
    pub eps_bar: Option<f64>,
    /// Defaults to `eps_bar/10`.
    #[serde(default)]
    pub eps_bar_prime: Option<f64>,
}

impl Default for Epsilons {
    fn default() -> Self {
        Self {
            eps: 1e-3,
            eps_ec: None,
            eps_bar: None,
            eps_bar_prime: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolConfig {
    /// Number of transmitted signals.
    #[serde(rename = "M")]
    pub m_total: usize,
    /// QBER abort threshold.
    pub delta: f64,
    /// Parameter-estimation sample size.
    pub k: usize,
    /// Verification-hash length.
    pub t: usize,
    pub cascade_passes: usize,
    /// Probability of an inconclusive outcome.
    pub loss_prob: f64,
    pub seed: u64,
    /// Sifted-set size; defaults to five standard deviations below the
    /// expected number of matching conclusive signals.
    #[serde(default)]
    pub m: Option<usize>,
    pub channel: ChannelModel,
    #[serde(default)]
    pub epsilons: Epsilons,
}

impl ProtocolConfig {
    /// A lossless configuration with sensible defaults.
    pub fn new(m_total: usize, channel: ChannelModel, seed: u64) -> Self {
        Self {
            m_total,
            delta: 0.05,
            k: m_total / 5,
            t: 32,
            cascade_passes: 4,
            loss_prob: 0.0,
            seed,
            m: None,
            channel,
            epsilons: Epsilons::default(),
        }
    }

    /// The sifted-set size actually requested.
    pub fn sift_size(&self) -> usize {
        self.m.unwrap_or_else(|| {
            let conclusive = self.m_total as f64 * (1.0 - self.loss_prob);
            let expected = conclusive / 2.0;
            let sd = (conclusive / 4.0).sqrt();
            (expected - 5.0 * sd).floor().max(0.0) as usize
        })
    }

    pub fn budget(&self) -> Result<SecurityBudget> {
        let e = &self.epsilons;
        let eps_ec = e.eps_ec.unwrap_or_else(|| 2f64.powi(-(self.t.min(1000) as i32)));
        let eps_bar = e.eps_bar.unwrap_or(0.5 * (e.eps - eps_ec));
        let eps_bar_prime = e.eps_bar_prime.unwrap_or(0.1 * eps_bar);
        let b = SecurityBudget::new(e.eps, eps_ec, eps_bar, eps_bar_prime)
            .map_err(|err| Error::InvalidConfig(err.to_string()))?;
        if b.slack() <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "eps − eps_bar − eps_ec = {:e} must be positive",
                b.slack()
            )));
        }
        if b.eps_bar <= b.eps_bar_prime {
            return Err(Error::InvalidConfig("eps_bar must exceed eps_bar_prime".into()));
        }
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.m_total == 0 {
            return bad("M must be positive".into());
        }
        if !(self.k > 0 && self.k < self.m_total) {
            return bad(format!("k = {} must satisfy 0 < k < M = {}", self.k, self.m_total));
        }
        if !(0.0..=0.5).contains(&self.delta) {
            return bad(format!("delta = {} must lie in [0, 0.5]", self.delta));
        }
        if self.t == 0 {
            return bad("t must be at least 1".into());
        }
        if self.cascade_passes < 2 {
            return bad("cascade_passes must be at least 2".into());
        }
        if !(0.0..1.0).contains(&self.loss_prob) {
            return bad(format!("loss_prob = {} must lie in [0, 1)", self.loss_prob));
        }
        let m = self.sift_size();
        if m <= self.k || m > self.m_total {
            return bad(format!("sift size m = {m} must satisfy k < m ≤ M"));
        }
        self.channel
            .validate()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        self.budget()?;
        Ok(())
    }
}
