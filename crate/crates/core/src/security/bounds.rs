use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{bisect_increasing, dot_compensated};

/// `h(x) = −x log₂ x − (1−x) log₂(1−x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    crate::error::check_unit_interval("x", x)?;
    Ok(h(x))
}

/// Binary entropy without range checking; callers guarantee `x ∈ [0, 1]`.
pub(crate) fn h(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

/// Failure probabilities of a finite-key run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SecurityBudget {
    /// Target security of the final key.
    pub eps: f64,
    /// Correctness failure, `2^{-t}` for a `t`-bit verification hash.
    pub eps_ec: f64,
    /// Smoothing parameter `ε̄`.
    pub eps_bar: f64,
    /// Failure of the statistics-compatibility test, `ε̄′`.
    pub eps_bar_prime: f64,
    /// Secrecy failure, once computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_pa: Option<f64>,
}

impl SecurityBudget {
    pub fn new(eps: f64, eps_ec: f64, eps_bar: f64, eps_bar_prime: f64) -> Result<Self> {
        for (name, v) in [
            ("eps", eps),
            ("eps_ec", eps_ec),
            ("eps_bar", eps_bar),
            ("eps_bar_prime", eps_bar_prime),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::OutOfRange { name, value: v });
            }
        }
        Ok(Self {
            eps,
            eps_ec,
            eps_bar,
            eps_bar_prime,
            eps_pa: None,
        })
    }

    /// `ε − ε̄ − ε_EC`, which must be positive for a key to exist.
    pub fn slack(&self) -> f64 {
        self.eps - self.eps_bar - self.eps_ec
    }

    fn require_slack(&self) -> Result<f64> {
        let slack = self.slack();
        if slack > 0.0 {
            Ok(slack)
        } else {
            Err(Error::Budget(format!(
                "eps − eps_bar − eps_ec = {slack:e} must be positive"
            )))
        }
    }
}

/// Finite-key parameters. `m_total` is the number of transmitted signals,
/// `n` the key-generating sifted bits, `k` the estimation sample and `m`
/// the sifted-set size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateParams {
    #[serde(rename = "M")]
    pub m_total: u64,
    pub n: u64,
    pub k: u64,
    pub m: u64,
    /// Final key length.
    pub l: u64,
    /// Syndrome length.
    pub s: f64,
    /// Verification-hash length.
    pub t: u64,
    /// QBER threshold.
    pub delta: f64,
    /// Measurement overlap; `½` for BB84.
    pub c_bar: f64,
    pub leak_ec: f64,
}

impl RateParams {
    /// BB84 parameters with `s = leak_EC` and `m = n + k`.
    pub fn bb84(n: u64, k: u64, delta: f64, leak_ec: f64, t: u64, l: u64) -> Self {
        Self {
            m_total: 2 * (n + k),
            n,
            k,
            m: n + k,
            l,
            s: leak_ec,
            t,
            delta,
            c_bar: 0.5,
            leak_ec,
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.c_bar > 0.0 && self.c_bar <= 1.0) {
            return Err(Error::OutOfRange {
                name: "c_bar",
                value: self.c_bar,
            });
        }
        crate::error::check_unit_interval("delta", self.delta)?;
        if self.n == 0 || self.k == 0 {
            return Err(Error::InvalidConfig("n and k must be positive".into()));
        }
        Ok(())
    }
}

/// `log₂ ε_pa(ν)`, optionally with `h` frozen at its maximum beyond `½`.
fn log2_eps_pa(nu: f64, p: &RateParams, clip: bool) -> f64 {
    let x = p.delta + nu;
    let hx = if clip && x >= 0.5 { 1.0 } else { h(x.min(1.0)) };
    let n = p.n as f64;
    // the terms are of order n and cancel almost completely near ν*
    -dot_compensated(&[
        (n, -p.c_bar.log2()),
        (-n, hx),
        (-1.0, p.s),
        (-1.0, p.t as f64),
        (-1.0, p.l as f64),
    ]) / 5.0
}

/// `log₂` of `exp(−nk²ν² / (2(n+k)(k+1)))`.
pub fn log2_tail(nu: f64, n: u64, k: u64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    -n * k * k * nu * nu / (2.0 * (n + k) * (k + 1.0)) / std::f64::consts::LN_2
}

/// The deviation `ν` at which the tail bound equals `eps`.
pub fn tail_deviation(eps: f64, n: u64, k: u64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    (2.0 * (n + k) * (k + 1.0) * (1.0 / eps).ln() / (n * k * k)).sqrt()
}

/// `log₂ ε_pa(ν)` where `ε_pa(ν) = 2^{−(n log(1/c̄) − n h(δ+ν) − s − t − l)/5}`.
pub fn log2_epsilon_pa(nu: f64, p: &RateParams) -> Result<f64> {
    p.check()?;
    if !(nu >= 0.0 && p.delta + nu <= 1.0) {
        return Err(Error::OutOfRange { name: "nu", value: nu });
    }
    Ok(log2_eps_pa(nu, p, false))
}

pub fn epsilon_pa(nu: f64, p: &RateParams) -> Result<f64> {
    Ok(log2_epsilon_pa(nu, p)?.exp2())
}

/// Root of `ε_pa(ν) = exp(−nk²ν²/(2(n+k)(k+1)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NuStar {
    pub nu: f64,
    pub log2_eps_pa: f64,
    pub eps_pa: f64,
    /// `|log ε_pa(ν*) − log RHS(ν*)|` relative to the magnitude of either side.
    pub relative_residual: f64,
    /// Whether `ε_pa(ν*) ≤ ¼`.
    pub quarter_condition: bool,
}

/// Bisection on `ν ∈ [0, 1−δ]` in the log domain.
///
/// `h(δ+ν)` is frozen at 1 beyond `δ+ν = ½` so the left side stays
/// monotone. Returns `Ok(None)` when `ε_pa(0) ≥ 1` or no crossing exists
/// inside the domain.
pub fn solve_nu_star(p: &RateParams) -> Result<Option<NuStar>> {
    p.check()?;
    let g = |nu: f64| log2_eps_pa(nu, p, true) - log2_tail(nu, p.n, p.k);
    let hi = 1.0 - p.delta;
    if g(0.0) >= 0.0 || g(hi) < 0.0 {
        return Ok(None);
    }
    let nu = bisect_increasing(g, 0.0, hi);
    let left = log2_eps_pa(nu, p, true);
    let right = log2_tail(nu, p.n, p.k);
    let scale = left.abs().max(right.abs()).max(f64::MIN_POSITIVE);
    Ok(Some(NuStar {
        nu,
        log2_eps_pa: left,
        eps_pa: left.exp2(),
        relative_residual: (left - right).abs() / scale,
        quarter_condition: left <= -2.0,
    }))
}

/// `⌊hmin − leak − 2 log₂(1/(2(ε−ε̄−ε_EC)))⌋`, clamped at 0.
pub fn max_key_length(hmin_bound: f64, leak_ec: f64, b: &SecurityBudget) -> Result<u64> {
    let slack = b.require_slack()?;
    let l = (hmin_bound - leak_ec - 2.0 * (1.0 / (2.0 * slack)).log2()).floor();
    Ok(if l > 0.0 { l as u64 } else { 0 })
}

/// `r′ = H(X|E) − H(X|Y)`; may be negative.
pub fn asymptotic_rate(h_x_given_e: f64, h_x_given_y: f64) -> f64 {
    h_x_given_e - h_x_given_y
}

/// Form of the statistical term in the finite-size correction `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaTerm {
    /// `7/√(n log₂(2/(ε̄−ε̄′)))`.
    #[default]
    Reciprocal,
    /// `7√(n log₂(2/ε̄))`, i.e. `7√(log₂(2/ε̄)/n)` per bit.
    Sqrt,
}

/// `Δ = 2 log₂(1/(2(ε−ε̄−ε_EC))) + statistical term`.
pub fn finite_size_correction(n: u64, b: &SecurityBudget, term: DeltaTerm) -> Result<f64> {
    let slack = b.require_slack()?;
    if !(b.eps_bar > b.eps_bar_prime) {
        return Err(Error::Budget(format!(
            "eps_bar = {:e} must exceed eps_bar_prime = {:e}",
            b.eps_bar, b.eps_bar_prime
        )));
    }
    let n = n as f64;
    let stat = match term {
        DeltaTerm::Reciprocal => 7.0 / (n * (2.0 / (b.eps_bar - b.eps_bar_prime)).log2()).sqrt(),
        DeltaTerm::Sqrt => 7.0 * (n * (2.0 / b.eps_bar).log2()).sqrt(),
    };
    Ok(2.0 * (1.0 / (2.0 * slack)).log2() + stat)
}

/// `r′ = H_ξ(X|E) − (leak_EC + Δ)/n`.
pub fn sifted_key_rate_finite(p: &RateParams, b: &SecurityBudget, h_xi: f64, term: DeltaTerm) -> Result<f64> {
    if p.n == 0 {
        return Err(Error::InvalidConfig("n must be positive".into()));
    }
    let delta = finite_size_correction(p.n, b, term)?;
    Ok(h_xi - (p.leak_ec + delta) / p.n as f64)
}

/// `H_ξ(X|E) ≥ log₂(1/c̄) − h(min(δ+ξ, ½))`.
pub fn uncertainty_entropy_bound(c_bar: f64, delta: f64, xi: f64) -> f64 {
    (1.0 / c_bar).log2() - h((delta + xi).min(0.5))
}

/// `ε_EC + ε_pa`.
pub fn security_parameter_bound(b: &SecurityBudget) -> Result<f64> {
    let eps_pa = b
        .eps_pa
        .ok_or_else(|| Error::Budget("eps_pa has not been computed".into()))?;
    Ok(b.eps_ec + eps_pa)
}
