//! Per-signal quantum phase: preparation, transmission and measurement.
//!
//! Each signal draws its randomness from its own counter-indexed stream, so
//! the outcome of signal `i` does not depend on any other signal.

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::config::{ChannelModel, ProtocolConfig};
use crate::error::Result;
use crate::quantum::{DensityMatrix, KrausChannel, PureState};
use crate::rng::signal_stream;

type Qubit = Matrix2<Complex64>;

const PREPARE: &str = "prepare";
const CHANNEL: &str = "channel";
const MEASURE: &str = "measure";

fn signal_rng(seed: u64, label: &str, i: usize) -> ChaCha8Rng {
    signal_stream(seed, label, i as u64)
}

/// BB84 state for bit `r` in basis `phi` (false: computational, true: Hadamard).
fn bb84_qubit(r: bool, phi: bool) -> Qubit {
    let (p0, off) = match (phi, r) {
        (false, false) => (1.0, 0.0),
        (false, true) => (0.0, 0.0),
        (true, false) => (0.5, 0.5),
        (true, true) => (0.5, -0.5),
    };
    Qubit::new(
        Complex64::new(p0, 0.0),
        Complex64::new(off, 0.0),
        Complex64::new(off, 0.0),
        Complex64::new(1.0 - p0, 0.0),
    )
}

pub fn bb84_state(r: bool, phi: bool) -> PureState {
    match (phi, r) {
        (false, false) => PureState::zero(),
        (false, true) => PureState::one(),
        (true, false) => PureState::plus(),
        (true, true) => PureState::minus(),
    }
}

/// Probability of outcome 0 when measuring in basis `phi`.
fn prob_zero(rho: &Qubit, phi: bool) -> f64 {
    let p = if phi {
        0.5 * (rho[(0, 0)].re + rho[(1, 1)].re) + rho[(0, 1)].re
    } else {
        rho[(0, 0)].re
    };
    p.clamp(0.0, 1.0)
}

/// Alice's bits, bases and prepared states.
#[derive(Debug, Clone)]
pub struct Preparation {
    pub r: Vec<bool>,
    pub phi_a: Vec<bool>,
    pub states: Vec<PureState>,
}

fn draw_preparation(seed: u64, i: usize) -> (bool, bool) {
    let mut rng = signal_rng(seed, PREPARE, i);
    (rng.random(), rng.random())
}

pub fn prepare_states(config: &ProtocolConfig) -> Preparation {
    let (r, phi_a): (Vec<bool>, Vec<bool>) = (0..config.m_total).map(|i| draw_preparation(config.seed, i)).unzip();
    let states = r.iter().zip(&phi_a).map(|(&r, &p)| bb84_state(r, p)).collect();
    Preparation { r, phi_a, states }
}

/// Channel realised on 2×2 matrices.
struct QubitChannel {
    model: ChannelModel,
    kraus: Vec<Qubit>,
}

impl QubitChannel {
    fn new(model: ChannelModel) -> Result<Self> {
        model.validate()?;
        let kraus = match model {
            ChannelModel::Depolarizing { p } => KrausChannel::depolarizing(p)?.kraus_ops().to_vec(),
            ChannelModel::AmplitudeDamping { gamma } => KrausChannel::amplitude_damping(gamma)?.kraus_ops().to_vec(),
            _ => Vec::new(),
        };
        let kraus = kraus
            .iter()
            .map(|k| Qubit::new(k[(0, 0)], k[(0, 1)], k[(1, 0)], k[(1, 1)]))
            .collect();
        Ok(Self { model, kraus })
    }

    fn apply(&self, rho: &Qubit, rng: &mut impl Rng) -> Qubit {
        match self.model {
            ChannelModel::Ideal => *rho,
            ChannelModel::Depolarizing { .. } | ChannelModel::AmplitudeDamping { .. } => self
                .kraus
                .iter()
                .fold(Qubit::zeros(), |acc, k| acc + k * rho * k.adjoint()),
            ChannelModel::InterceptResend { fraction } => {
                if rng.random::<f64>() < fraction {
                    let basis: bool = rng.random();
                    let outcome = rng.random::<f64>() >= prob_zero(rho, basis);
                    bb84_qubit(outcome, basis)
                } else {
                    *rho
                }
            }
        }
    }
}

fn to_density(q: &Qubit) -> DensityMatrix {
    let m = crate::quantum::CMatrix::from_row_slice(2, 2, &[q[(0, 0)], q[(0, 1)], q[(1, 0)], q[(1, 1)]]);
    DensityMatrix::new(m).expect("channel output is a state")
}

fn from_density(rho: &DensityMatrix) -> Qubit {
    Qubit::new(rho.entry(0, 0), rho.entry(0, 1), rho.entry(1, 0), rho.entry(1, 1))
}

/// Sends each prepared state through the channel.
pub fn transmit(channel: &ChannelModel, states: &[PureState], seed: u64) -> Result<Vec<DensityMatrix>> {
    let ch = QubitChannel::new(*channel)?;
    Ok(states
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut rng = signal_rng(seed, CHANNEL, i);
            to_density(&ch.apply(&from_density(&s.density()), &mut rng))
        })
        .collect())
}

/// Bob's bases, outcomes (`None` for inconclusive) and conclusive indices.
#[derive(Debug, Clone)]
pub struct Measurement {
    pub phi_b: Vec<bool>,
    pub outcomes: Vec<Option<bool>>,
    pub omega: Vec<usize>,
}

fn measure_one(rho: &Qubit, loss_prob: f64, seed: u64, i: usize) -> (bool, Option<bool>) {
    let mut rng = signal_rng(seed, MEASURE, i);
    let basis: bool = rng.random();
    let lost = rng.random::<f64>() < loss_prob;
    let bit = rng.random::<f64>() >= prob_zero(rho, basis);
    (basis, (!lost).then_some(bit))
}

fn collect_measurement(results: impl Iterator<Item = (bool, Option<bool>)>) -> Measurement {
    let (phi_b, outcomes): (Vec<bool>, Vec<Option<bool>>) = results.unzip();
    let omega = outcomes
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.map(|_| i))
        .collect();
    Measurement { phi_b, outcomes, omega }
}

pub fn measure(states: &[DensityMatrix], config: &ProtocolConfig) -> Measurement {
    collect_measurement(
        states
            .iter()
            .enumerate()
            .map(|(i, rho)| measure_one(&from_density(rho), config.loss_prob, config.seed, i)),
    )
}

/// The whole quantum phase without materialising intermediate states;
/// draws exactly the same randomness as the three separate steps.
pub(crate) fn quantum_phase(config: &ProtocolConfig) -> Result<(Vec<bool>, Vec<bool>, Measurement)> {
    let ch = QubitChannel::new(config.channel)?;
    let mut r = Vec::with_capacity(config.m_total);
    let mut phi_a = Vec::with_capacity(config.m_total);
    let results: Vec<(bool, Option<bool>)> = (0..config.m_total)
        .map(|i| {
            let (bit, basis) = draw_preparation(config.seed, i);
            r.push(bit);
            phi_a.push(basis);
            let mut rng = signal_rng(config.seed, CHANNEL, i);
            let out = ch.apply(&bb84_qubit(bit, basis), &mut rng);
            measure_one(&out, config.loss_prob, config.seed, i)
        })
        .collect();
    Ok((r, phi_a, collect_measurement(results.into_iter())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::linalg::max_abs_diff;

    fn config(m: usize, channel: ChannelModel) -> ProtocolConfig {
        ProtocolConfig::new(m, channel, 99)
    }

    #[test]
    fn encoding() {
        assert_eq!(bb84_state(false, false), PureState::zero());
        assert_eq!(bb84_state(true, true), PureState::minus());
        for (r, p) in [(false, false), (true, false), (false, true), (true, true)] {
            let rho = bb84_state(r, p).density();
            assert!(max_abs_diff(&to_density(&bb84_qubit(r, p)).into_matrix(), rho.matrix()) < 1e-15);
        }
    }

    #[test]
    fn state_frequencies_are_uniform() {
        let prep = prepare_states(&config(100_000, ChannelModel::Ideal));
        let mut counts = [0usize; 4];
        for (&r, &p) in prep.r.iter().zip(&prep.phi_a) {
            counts[usize::from(r) + 2 * usize::from(p)] += 1;
        }
        for c in counts {
            assert!((c as f64 / 1e5 - 0.25).abs() < 0.01);
        }
    }

    #[test]
    fn ideal_and_fully_depolarizing_channels() {
        let prep = prepare_states(&config(50, ChannelModel::Ideal));
        let out = transmit(&ChannelModel::Ideal, &prep.states, 1).unwrap();
        for (s, rho) in prep.states.iter().zip(&out) {
            assert!(max_abs_diff(s.density().matrix(), rho.matrix()) < 1e-15);
        }
        let out = transmit(&ChannelModel::Depolarizing { p: 1.0 }, &prep.states, 1).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        for rho in &out {
            assert!(max_abs_diff(rho.matrix(), mixed.matrix()) < 1e-15);
        }
    }

    #[test]
    fn hadamard_measurements() {
        let plus = vec![bb84_state(false, true).density(); 1000];
        let cfg = config(1000, ChannelModel::Ideal);
        let m = measure(&plus, &cfg);
        for (b, t) in m.phi_b.iter().zip(&m.outcomes) {
            if *b {
                assert_eq!(*t, Some(false));
            }
        }
        let zero = vec![bb84_state(false, false).density(); 100_000];
        let m = measure(&zero, &config(100_000, ChannelModel::Ideal));
        let (ones, total) = m
            .phi_b
            .iter()
            .zip(&m.outcomes)
            .filter(|(b, _)| **b)
            .fold((0usize, 0usize), |(o, n), (_, t)| (o + usize::from(t.unwrap()), n + 1));
        assert!((ones as f64 / total as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn loss_fraction() {
        let mut cfg = config(100_000, ChannelModel::Ideal);
        cfg.loss_prob = 0.1;
        let (_, _, m) = quantum_phase(&cfg).unwrap();
        assert!((m.omega.len() as f64 / 1e5 - 0.9).abs() < 0.01);
        assert!(m.omega.iter().all(|&i| m.outcomes[i].is_some()));
    }

    #[test]
    fn fast_path_matches_step_by_step() {
        for channel in [
            ChannelModel::Ideal,
            ChannelModel::Depolarizing { p: 0.3 },
            ChannelModel::AmplitudeDamping { gamma: 0.2 },
            ChannelModel::InterceptResend { fraction: 0.5 },
        ] {
            let mut cfg = config(2000, channel);
            cfg.loss_prob = 0.2;
            let prep = prepare_states(&cfg);
            let sent = transmit(&channel, &prep.states, cfg.seed).unwrap();
            let stepwise = measure(&sent, &cfg);
            let (r, phi_a, fast) = quantum_phase(&cfg).unwrap();
            assert_eq!(r, prep.r);
            assert_eq!(phi_a, prep.phi_a);
            assert_eq!(fast.phi_b, stepwise.phi_b);
            assert_eq!(fast.outcomes, stepwise.outcomes);
            assert_eq!(fast.omega, stepwise.omega);
        }
    }
}
