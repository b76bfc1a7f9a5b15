//! Grid search for the finite-key rate per signal over the sifted split
//! `n/M` and the smoothing parameters `ε̄ > ε̄′`.

use serde::{Deserialize, Serialize};

use super::bounds::{
    h, sifted_key_rate_finite, solve_nu_star, tail_deviation, uncertainty_entropy_bound, DeltaTerm, RateParams,
    SecurityBudget,
};

/// How reconciliation leakage scales with the key length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeakModel {
    /// `leak_EC = f · n · h(Q)`.
    Efficiency(f64),
    /// A fixed number of leaked bits per key bit.
    PerBit(f64),
}

impl LeakModel {
    pub fn leak(&self, n: u64, qber: f64) -> f64 {
        match *self {
            LeakModel::Efficiency(f) => f * n as f64 * h(qber),
            LeakModel::PerBit(b) => b * n as f64,
        }
    }
}

impl Default for LeakModel {
    fn default() -> Self {
        LeakModel::Efficiency(1.1)
    }
}

/// Knobs of the optimiser besides the channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateOptions {
    /// Measurement overlap.
    pub c_bar: f64,
    /// QBER threshold; defaults to the channel QBER.
    pub delta: Option<f64>,
    pub delta_term: DeltaTerm,
}

impl Default for RateOptions {
    fn default() -> Self {
        Self {
            c_bar: 0.5,
            delta: None,
            delta_term: DeltaTerm::Reciprocal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    #[serde(rename = "M")]
    pub m_total: u64,
    pub qber: f64,
    pub n: u64,
    pub k: u64,
    pub m: u64,
    pub eps: f64,
    pub eps_ec: f64,
    pub eps_bar: f64,
    pub eps_bar_prime: f64,
    pub t: u64,
    pub leak_ec: f64,
    /// Statistical deviation implied by `ε̄′`.
    pub xi: f64,
    pub h_xi: f64,
    pub l_max: u64,
    pub r_sifted: f64,
    pub r_per_signal: f64,
    pub nu_star: Option<f64>,
    pub eps_pa_at_nu_star: Option<f64>,
    /// `ε_pa(ν*) ≤ ¼`.
    pub eps_pa_condition: bool,
    pub feasible: bool,
}

impl RateReport {
    fn zero(m_total: u64, qber: f64, b: &SecurityBudget) -> Self {
        Self {
            m_total,
            qber,
            n: 0,
            k: 0,
            m: 0,
            eps: b.eps,
            eps_ec: b.eps_ec,
            eps_bar: 0.0,
            eps_bar_prime: 0.0,
            t: hash_bits(b.eps_ec),
            leak_ec: 0.0,
            xi: 0.0,
            h_xi: 0.0,
            l_max: 0,
            r_sifted: 0.0,
            r_per_signal: 0.0,
            nu_star: None,
            eps_pa_at_nu_star: None,
            eps_pa_condition: false,
            feasible: false,
        }
    }
}

/// Smallest `t` with `2^{-t} ≤ eps_ec`.
pub fn hash_bits(eps_ec: f64) -> u64 {
    (-eps_ec.log2()).ceil().max(1.0) as u64
}

struct Candidate {
    frac: f64,
    log_bar: f64,
    log_bar_prime: f64,
}

fn evaluate(
    m_total: u64,
    qber: f64,
    b: &SecurityBudget,
    leak_model: LeakModel,
    opts: &RateOptions,
    c: &Candidate,
) -> Option<RateReport> {
    let n = (c.frac * m_total as f64).round() as u64;
    if n == 0 || n >= m_total {
        return None;
    }
    let k = m_total - n;
    let eps_bar = 10f64.powf(c.log_bar);
    let eps_bar_prime = 10f64.powf(c.log_bar_prime);
    let budget = SecurityBudget {
        eps_bar,
        eps_bar_prime,
        eps_pa: None,
        ..*b
    };
    if !(budget.slack() > 0.0 && eps_bar > eps_bar_prime) {
        return None;
    }
    let delta = opts.delta.unwrap_or(qber);
    let t = hash_bits(b.eps_ec);
    let leak_ec = leak_model.leak(n, qber);
    let xi = tail_deviation(eps_bar_prime, n, k);
    let h_xi = uncertainty_entropy_bound(opts.c_bar, delta, xi);
    let mut params = RateParams {
        m_total,
        n,
        k,
        m: k,
        l: 0,
        s: leak_ec,
        t,
        delta,
        c_bar: opts.c_bar,
        leak_ec,
    };
    let r_sifted = sifted_key_rate_finite(&params, &budget, h_xi, opts.delta_term).ok()?;
    let l_max = if r_sifted > 0.0 { (r_sifted * n as f64).floor() as u64 } else { 0 };
    params.l = l_max;
    let nu = solve_nu_star(&params).ok().flatten();
    let r_sifted = r_sifted.max(0.0);
    Some(RateReport {
        m_total,
        qber,
        n,
        k,
        m: k,
        eps: b.eps,
        eps_ec: b.eps_ec,
        eps_bar,
        eps_bar_prime,
        t,
        leak_ec,
        xi,
        h_xi,
        l_max,
        r_sifted,
        r_per_signal: n as f64 / m_total as f64 * r_sifted,
        nu_star: nu.map(|s| s.nu),
        eps_pa_at_nu_star: nu.map(|s| s.eps_pa),
        eps_pa_condition: nu.is_some_and(|s| s.quarter_condition),
        feasible: l_max > 0 && nu.is_some_and(|s| s.quarter_condition),
    })
}

fn better(a: &RateReport, b: &Option<RateReport>) -> bool {
    match b {
        None => true,
        Some(b) => a.r_per_signal > b.r_per_signal,
    }
}

/// Maximises `r = (n/M) r′` with `k = m = M − n`.
///
/// The coarse pass scans `n/M ∈ {0.5, 0.55, …, 0.95}` and decades of `ε̄`
/// and `ε̄′` from `min(ε/2, ε − ε_EC)` down to `ε·10⁻⁶`; the refinement
/// scans a finer grid around the coarse optimum. Only `eps` and `eps_ec`
/// of `b` are read. Returns a zero-rate report when no candidate yields a
/// key.
pub fn optimize_rate(m_total: u64, qber: f64, b: &SecurityBudget, leak_model: LeakModel, opts: &RateOptions) -> RateReport {
    let zero = RateReport::zero(m_total, qber, b);
    if !(qber >= 0.0 && qber < 0.5) || m_total < 2 || !(b.eps > b.eps_ec) {
        return zero;
    }
    let top = (0.5 * b.eps).min(0.999 * (b.eps - b.eps_ec)).log10();
    let bottom = (b.eps * 1e-6).log10();
    let decades: Vec<f64> = (0..)
        .map(|i| top - i as f64)
        .take_while(|&x| x >= bottom - 1e-9)
        .collect();

    let mut best: Option<RateReport> = None;
    let mut best_cand = None;
    for i in 0..10 {
        let frac = 0.5 + 0.05 * i as f64;
        for (j, &lb) in decades.iter().enumerate() {
            for &lbp in &decades[j + 1..] {
                let cand = Candidate {
                    frac,
                    log_bar: lb,
                    log_bar_prime: lbp,
                };
                if let Some(r) = evaluate(m_total, qber, b, leak_model, opts, &cand) {
                    if better(&r, &best) {
                        best = Some(r);
                        best_cand = Some(cand);
                    }
                }
            }
        }
    }

    if let Some(c0) = best_cand {
        for df in -10..=10 {
            let frac = c0.frac + 0.005 * df as f64;
            if !(0.0..1.0).contains(&frac) {
                continue;
            }
            for db in -2..=2 {
                for dbp in -2..=2 {
                    let log_bar = (c0.log_bar + 0.25 * db as f64).min(top);
                    let log_bar_prime = c0.log_bar_prime + 0.25 * dbp as f64;
                    if log_bar_prime >= log_bar || log_bar_prime < bottom - 1e-9 {
                        continue;
                    }
                    let cand = Candidate {
                        frac,
                        log_bar,
                        log_bar_prime,
                    };
                    if let Some(r) = evaluate(m_total, qber, b, leak_model, opts, &cand) {
                        if better(&r, &best) {
                            best = Some(r);
                        }
                    }
                }
            }
        }
    }
    match best {
        Some(r) if r.r_per_signal > 0.0 => r,
        _ => zero,
    }
}
