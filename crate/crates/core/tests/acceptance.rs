//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{random_probs, random_state, random_unitary};
use qkd_core::capacity::{capacity_sweep, maximize_coherent_information, verify_diagonal_optimality};
use qkd_core::entropy::{
    conditional_entropy, max_entropy, min_entropy, shannon_entropy, DiscreteDistribution, JointDistribution,
};
use qkd_core::protocol::bits::hamming_distance;
use qkd_core::protocol::{
    measure, prepare_states, run_protocol, sift, transmit, verify_hash, ChannelModel, ProtocolConfig, ToeplitzHash,
};
use qkd_core::quantum::{purified_distance, von_neumann_entropy, DensityMatrix};
use qkd_core::rng::stream;
use qkd_core::security::{
    log2_tail, optimize_rate, solve_nu_star, LeakModel, RateOptions, RateParams, SecurityBudget,
};
use rand::Rng;

fn h(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn capacity_endpoints() -> Outcome {
    let start = Instant::now();
    let q0 = maximize_coherent_information(0.0).unwrap().q;
    let q_half = maximize_coherent_information(0.5).unwrap().q;
    let elapsed = start.elapsed();
    outcome(
        (q0 - 1.0).abs() <= 1e-9 && q_half.abs() <= 1e-9 && elapsed < Duration::from_secs(1),
        format!("Q(0) = {q0}, Q(0.5) = {q_half}, {elapsed:.2?}"),
    )
}

fn capacity_monotone() -> Outcome {
    let grid: Vec<f64> = (0..=20).map(|i| 0.025 * i as f64).collect();
    let points = capacity_sweep(&grid).unwrap();
    let monotone = points.windows(2).all(|w| w[1].q <= w[0].q + 1e-9);
    let mut worst: f64 = 0.0;
    for p in &points {
        let oracle = (0..1_000_000)
            .map(|i| {
                let a = i as f64 / 999_999.0;
                h((1.0 - p.gamma) * a) - h(p.gamma * a)
            })
            .fold(0.0, f64::max);
        worst = worst.max((p.q - oracle).abs());
    }
    outcome(
        monotone && worst <= 1e-6,
        format!("monotone = {monotone}, max |Q − grid oracle| = {worst:.2e}"),
    )
}

fn diagonal_optimality() -> Outcome {
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    for (i, g) in [0.1, 0.2, 0.3, 0.4].into_iter().enumerate() {
        let r = verify_diagonal_optimality(g, 10_000, 100 + i as u64).unwrap();
        violations += r.violations;
        worst = worst.max(r.max_excess);
    }
    outcome(
        violations == 0,
        format!("{violations} violations in 4×10⁴ trials, max excess {worst:.2e}"),
    )
}

fn intercept_resend() -> Outcome {
    let start = Instant::now();
    let eve = ChannelModel::InterceptResend { fraction: 1.0 };
    let cfg = ProtocolConfig::new(100_000, eve, 4);
    let prep = prepare_states(&cfg);
    let sent = transmit(&cfg.channel, &prep.states, cfg.seed).unwrap();
    let m = measure(&sent, &cfg);
    let matching = m.omega.iter().filter(|&&i| prep.phi_a[i] == m.phi_b[i]).count();
    let (sigma, _) = sift(&prep.phi_a, &m.phi_b, &m.omega, matching);
    let errors = sigma.iter().filter(|&&i| Some(prep.r[i]) != m.outcomes[i]).count();
    let qber = errors as f64 / sigma.len() as f64;

    let runs = 1000;
    let aborts = (0..runs)
        .filter(|&seed| {
            let mut cfg = ProtocolConfig::new(10_000, eve, seed);
            cfg.k = 2000;
            cfg.delta = 0.05;
            !run_protocol(&cfg).unwrap().flags.pe.passed()
        })
        .count();
    let elapsed = start.elapsed();
    let rate = aborts as f64 / runs as f64;
    outcome(
        (qber - 0.25).abs() <= 0.01 && rate >= 0.9999 && elapsed < Duration::from_secs(30),
        format!("QBER = {qber:.4}, aborts {aborts}/{runs}, {elapsed:.2?}"),
    )
}

fn correctness_bound() -> Outcome {
    let t = 16;
    let trials = 100_000;
    let mut rng = stream(5, "acceptance-correctness");
    let mut bad = 0usize;
    for _ in 0..trials {
        let x: Vec<bool> = (0..64).map(|_| rng.random()).collect();
        let mut y = x.clone();
        let i = rng.random_range(0..64);
        y[i] = !y[i];
        if verify_hash(&x, &y, t, &mut rng).unwrap().flag.passed() && hamming_distance(&x, &y) > 0 {
            bad += 1;
        }
    }
    let p = 2f64.powi(-(t as i32));
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let rate = bad as f64 / trials as f64;
    outcome(
        rate <= p + 3.0 * sigma,
        format!("{bad} collisions in {trials} seeds: rate {rate:.2e} ≤ {:.2e}", p + 3.0 * sigma),
    )
}

fn bits(x: usize, len: usize) -> Vec<bool> {
    (0..len).rev().map(|i| x >> i & 1 == 1).collect()
}

fn leftover_hash_toy() -> Outcome {
    // X uniform on 8 bits, E the parity of X on a subset S: H_min(X|E) = 7.
    // Each of the 255 subsets is one scenario, averaged over all 512 seeds.
    let (n, l) = (8, 2);
    let bound = 2f64.powf(-0.5 * (7.0 - l as f64));
    let seeds = 1usize << (n + l - 1);
    let hashes: Vec<Vec<usize>> = (0..seeds)
        .map(|s| {
            let f = ToeplitzHash::new(n, l, bits(s, n + l - 1)).unwrap();
            (0..256)
                .map(|x| f.hash(&bits(x, n)).unwrap().iter().fold(0, |a, &b| a << 1 | usize::from(b)))
                .collect()
        })
        .collect();
    let mut violations = 0;
    let mut worst: f64 = 0.0;
    for mask in 1..256usize {
        let total: f64 = hashes
            .iter()
            .map(|key| {
                let mut joint = [[0.0f64; 2]; 4];
                for x in 0..256 {
                    joint[key[x]][(x & mask).count_ones() as usize % 2] += 1.0 / 256.0;
                }
                // ½ Σ |P(k,e) − P(e)/4| with P(e) = ½
                0.5 * joint.iter().flatten().map(|p| (p - 0.125).abs()).sum::<f64>()
            })
            .sum();
        let d = total / seeds as f64;
        worst = worst.max(d);
        if d > bound {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("{violations} violations over 255 scenarios, worst {worst:.4} vs bound {bound:.4}"),
    )
}

fn nu_star_grid() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut unique = true;
    let mut solved = 0;
    for i in 0..100 {
        let n = [10_000u64, 100_000, 1_000_000, 10_000_000][i % 4];
        let k = n / [2, 5, 10, 20, 50][(i / 4) % 5];
        let delta = [0.01, 0.02, 0.03, 0.05, 0.08][i / 20];
        let leak = 1.1 * h(delta) * n as f64;
        let room = n as f64 * (1.0 - h(delta)) - leak - 32.0;
        let p = RateParams::bb84(n, k, delta, leak, 32, (0.5 * room).floor() as u64);
        let Some(root) = solve_nu_star(&p).unwrap() else { continue };
        solved += 1;
        worst = worst.max(root.relative_residual);
        let gap = |nu: f64| {
            let x = delta + nu;
            let hx = if x >= 0.5 { 1.0 } else { h(x) };
            let nn = n as f64;
            -(nn - nn * hx - p.s - 32.0 - p.l as f64) / 5.0 - log2_tail(nu, n, k)
        };
        let hi = 1.0 - delta;
        let signs: Vec<bool> = (0..=1000).map(|j| gap(hi * j as f64 / 1000.0) < 0.0).collect();
        unique &= signs.windows(2).filter(|w| w[0] != w[1]).count() == 1;
    }
    outcome(
        solved == 100 && worst <= 1e-12 && unique,
        format!("{solved}/100 solved, max relative residual {worst:.2e}, unique = {unique}"),
    )
}

fn finite_rate() -> Outcome {
    let b = SecurityBudget::new(1e-9, 1e-10, 1e-10, 1e-11).unwrap();
    let q = 0.01;
    let mut last = 0.0;
    let mut monotone = true;
    for e in 0..=12 {
        let m = 10f64.powf(4.0 + 0.25 * e as f64).round() as u64;
        let r = optimize_rate(m, q, &b, LeakModel::Efficiency(1.1), &RateOptions::default()).r_per_signal;
        monotone &= r >= last;
        last = r;
    }
    let benchmark = 1.0 - h(q) - 1.1 * h(q);
    outcome(
        monotone && last >= 0.85 * benchmark,
        format!("monotone = {monotone}, r(10⁷) = {last:.4} vs benchmark {benchmark:.4} (ratio {:.3})", last / benchmark),
    )
}

fn entropy_axioms() -> Outcome {
    let start = Instant::now();
    let mut rng = stream(9, "acceptance-axioms");
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let len = 1 + rng.random_range(0..16);
        let p = DiscreteDistribution::new(random_probs(len, &mut rng)).unwrap();
        let (lo, mid, hi) = (min_entropy(&p).unwrap(), shannon_entropy(&p).unwrap(), max_entropy(&p).unwrap());
        if !(lo <= mid + 1e-12 && mid <= hi + 1e-12) {
            failures.push("ordering");
        }

        let (nx, ny) = (1 + rng.random_range(0..5), 1 + rng.random_range(0..5));
        let flat = random_probs(nx * ny, &mut rng);
        let j = JointDistribution::new(flat.chunks(ny).map(<[f64]>::to_vec).collect()).unwrap();
        let chain = conditional_entropy(&j).unwrap() - (shannon_entropy(&j.flattened()).unwrap()
            - shannon_entropy(&j.marginal_y()).unwrap());
        if chain.abs() > 1e-10 {
            failures.push("chain rule");
        }

        let dim = 2 + rng.random_range(0..3);
        let states: Vec<DensityMatrix> = (0..3).map(|_| random_state(dim, 1.0, &mut rng)).collect();
        let w = random_probs(3, &mut rng);
        let mix = DensityMatrix::mixture(&w, &states).unwrap();
        let avg: f64 = w.iter().zip(&states).map(|(w, s)| w * von_neumann_entropy(s).unwrap()).sum();
        if von_neumann_entropy(&mix).unwrap() < avg - 1e-9 {
            failures.push("concavity");
        }

        let u = random_unitary(dim, &mut rng);
        let rotated = states[0].conjugate(&u).unwrap();
        if (von_neumann_entropy(&rotated).unwrap() - von_neumann_entropy(&states[0]).unwrap()).abs() > 1e-9 {
            failures.push("unitary invariance");
        }

        let sub: Vec<DensityMatrix> = (0..3)
            .map(|_| {
                let t = 0.3 + 0.7 * rng.random::<f64>();
                random_state(dim, t, &mut rng)
            })
            .collect();
        let d = |a: usize, b: usize| purified_distance(&sub[a], &sub[b]).unwrap();
        if (d(0, 1) - d(1, 0)).abs() > 1e-12 || d(0, 1) > d(0, 2) + d(2, 1) + 1e-9 || d(0, 0) > 1e-6 {
            failures.push("purified distance");
        }
    }
    let elapsed = start.elapsed();
    failures.dedup();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!("1000 instances per axiom, failures: {failures:?}, {elapsed:.2?}"),
    )
}

fn determinism() -> Outcome {
    let mut cfg = ProtocolConfig::new(20_000, ChannelModel::Depolarizing { p: 0.04 }, 2024);
    cfg.k = 3000;
    let a = serde_json::to_vec(&run_protocol(&cfg).unwrap()).unwrap();
    let b = serde_json::to_vec(&run_protocol(&cfg).unwrap()).unwrap();
    outcome(a == b, format!("{} bytes, identical = {}", a.len(), a == b))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("capacity endpoints", capacity_endpoints),
        ("capacity monotonicity", capacity_monotone),
        ("diagonal optimality", diagonal_optimality),
        ("intercept-resend", intercept_resend),
        ("correctness bound", correctness_bound),
        ("leftover hash toy", leftover_hash_toy),
        ("nu* root finder", nu_star_grid),
        ("finite-size rate", finite_rate),
        ("entropy axioms", entropy_axioms),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {name}: {} [{:.2?}]", i + 1, o.detail, start.elapsed());
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
