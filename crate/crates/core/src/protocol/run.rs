use serde::Serialize;

use super::bits::{to_binary_string, to_hex};
use super::cascade::reconcile_cascade;
use super::config::ProtocolConfig;
use super::signals::quantum_phase;
use super::sifting::{estimate_parameters, sift, Flag};
use super::toeplitz::{privacy_amplification, seed_len, verify_hash};
use crate::error::Result;
use crate::rng::stream;
use crate::security::{h, max_key_length, tail_deviation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub sift: Flag,
    pub pe: Flag,
    pub ec: Flag,
}

impl Flags {
    pub fn all_passed(&self) -> bool {
        self.sift.passed() && self.pe.passed() && self.ec.passed()
    }
}

/// Transcript of one protocol execution.
///
/// Bit strings are written as `0`/`1` characters, outcomes use `-` for an
/// inconclusive result, keys and hash seeds are hex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolRun {
    #[serde(rename = "M")]
    pub m_total: usize,
    pub seed: u64,
    pub r: String,
    pub phi_a: String,
    pub phi_b: String,
    #[serde(rename = "T")]
    pub outcomes: String,
    #[serde(rename = "Omega")]
    pub omega: Vec<usize>,
    #[serde(rename = "Sigma")]
    pub sigma: Vec<usize>,
    pub pe_sample: Vec<usize>,
    pub qber_estimate: Option<f64>,
    /// Bit-error rate between the reconciled-input strings (diagnostic only;
    /// not available to the parties).
    pub true_qber: Option<f64>,
    pub flags: Flags,
    pub n: usize,
    /// Bits still differing after reconciliation (diagnostic only).
    pub residual_errors: Option<usize>,
    pub leak_ec_bits: u64,
    pub hash_seed: Option<String>,
    pub pa_seed: Option<String>,
    /// Final key length `l`.
    pub key_length: usize,
    pub key_a: Option<String>,
    pub key_b: Option<String>,
    pub transcript_bits: u64,
}

impl ProtocolRun {
    pub fn summary(&self) -> String {
        format!(
            "flags={},{},{} qber={} leak={} l={} M={}",
            self.flags.sift,
            self.flags.pe,
            self.flags.ec,
            self.qber_estimate.map_or_else(|| "na".to_string(), |q| format!("{q:.6}")),
            self.leak_ec_bits,
            self.key_length,
            self.m_total
        )
    }

    /// Keys exist and agree.
    pub fn keys_match(&self) -> bool {
        matches!((&self.key_a, &self.key_b), (Some(a), Some(b)) if a == b)
    }
}

fn bits_for_index(m: usize) -> u64 {
    (usize::BITS - m.saturating_sub(1).leading_zeros()) as u64
}

/// Prepare → transmit → measure → sift → estimate → reconcile → verify →
/// amplify. Aborts are recorded as flags; later steps are then skipped.
pub fn run_protocol(config: &ProtocolConfig) -> Result<ProtocolRun> {
    config.validate()?;
    let budget = config.budget()?;
    let m_total = config.m_total;
    let (r, phi_a, meas) = quantum_phase(config)?;

    let mut run = ProtocolRun {
        m_total,
        seed: config.seed,
        r: to_binary_string(&r),
        phi_a: to_binary_string(&phi_a),
        phi_b: to_binary_string(&meas.phi_b),
        outcomes: meas
            .outcomes
            .iter()
            .map(|t| match t {
                Some(true) => '1',
                Some(false) => '0',
                None => '-',
            })
            .collect(),
        omega: meas.omega.clone(),
        sigma: Vec::new(),
        pe_sample: Vec::new(),
        qber_estimate: None,
        true_qber: None,
        flags: Flags {
            sift: Flag::Skipped,
            pe: Flag::Skipped,
            ec: Flag::Skipped,
        },
        n: 0,
        residual_errors: None,
        leak_ec_bits: 0,
        hash_seed: None,
        pa_seed: None,
        key_length: 0,
        key_a: None,
        key_b: None,
        // Bob announces which signals were conclusive, then both announce
        // their bases on those
        transcript_bits: m_total as u64 + 2 * meas.omega.len() as u64,
    };

    let m = config.sift_size();
    let (sigma, sift_flag) = sift(&phi_a, &meas.phi_b, &meas.omega, m);
    run.flags.sift = sift_flag;
    run.transcript_bits += 1;
    if !sift_flag.passed() {
        return Ok(run);
    }
    let x_a: Vec<bool> = sigma.iter().map(|&i| r[i]).collect();
    let x_b: Vec<bool> = sigma.iter().map(|&i| meas.outcomes[i].expect("sifted outcomes are conclusive")).collect();
    run.sigma = sigma;

    let mut rng = stream(config.seed, "parameter-estimation");
    let est = estimate_parameters(&x_a, &x_b, config.k, config.delta, &mut rng)?;
    run.qber_estimate = Some(est.qber);
    run.flags.pe = est.flag;
    // sample positions, both parties' sample bits, and the verdict
    run.transcript_bits += config.k as u64 * (bits_for_index(m) + 2) + 1;
    run.pe_sample = est.sample;
    let n = est.key_a.len();
    run.n = n;
    run.true_qber = Some(super::bits::hamming_distance(&est.key_a, &est.key_b) as f64 / n as f64);
    if !est.flag.passed() {
        return Ok(run);
    }

    let hint = est.qber.max(1.0 / config.k as f64);
    let mut rng = stream(config.seed, "cascade");
    let rec = reconcile_cascade(&est.key_a, &est.key_b, hint, config.cascade_passes, &mut rng)?;
    run.leak_ec_bits = rec.leak_bits;
    run.residual_errors = Some(super::bits::hamming_distance(&est.key_a, &rec.corrected));
    run.transcript_bits += rec.transcript_bits;

    let mut rng = stream(config.seed, "verification");
    let check = verify_hash(&est.key_a, &rec.corrected, config.t, &mut rng)?;
    run.flags.ec = check.flag;
    run.hash_seed = Some(to_hex(check.hash.diagonal_seed()));
    run.transcript_bits += check.hash.diagonal_seed().len() as u64 + config.t as u64 + 1;
    if !check.flag.passed() {
        return Ok(run);
    }

    // smooth min-entropy bound from the uncertainty relation with the
    // statistical deviation at confidence ε̄
    let nu = tail_deviation(budget.eps_bar, n as u64, config.k as u64);
    let hmin = n as f64 * (1.0 - h((config.delta + nu).min(0.5)));
    let leak = (rec.leak_bits + config.t as u64) as f64;
    let l = (max_key_length(hmin, leak, &budget)? as usize).min(n);

    let mut rng = stream(config.seed, "privacy-amplification");
    let (key_a, pa) = privacy_amplification(&est.key_a, l, &mut rng)?;
    let key_b = pa.hash(&rec.corrected)?;
    run.transcript_bits += seed_len(n, l) as u64;
    run.pa_seed = Some(to_hex(pa.diagonal_seed()));
    run.key_length = l;
    run.key_a = Some(to_hex(&key_a));
    run.key_b = Some(to_hex(&key_b));
    Ok(run)
}
