use std::fs;
use std::io::Write;
use std::path::Path;

use qkd_core::capacity::{capacity_sweep, coherent_info_curve};
use qkd_core::protocol::{run_protocol, ProtocolConfig};
use qkd_core::security::{optimize_rate, DeltaTerm, LeakModel, RateOptions, RateReport, SecurityBudget};

use crate::entropy_input::EntropyInput;
use crate::{parse_count, CliError, DeltaTermArg};

type CliResult<T = ()> = Result<T, CliError>;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Writes `body` to `path`, or standard output when absent.
fn emit(path: Option<&Path>, body: &[u8]) -> CliResult {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout().write_all(body).map_err(internal),
    }
}

/// The summary goes to stdout when the artifact went to a file, otherwise to
/// stderr so that stdout stays machine-readable.
fn summary(path: Option<&Path>, line: &str) {
    if path.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

/// Shortest round-trip form; exponent notation for very small or large
/// magnitudes.
fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(internal)?;
    for row in rows {
        w.write_record(&row).map_err(internal)?;
    }
    w.into_inner().map_err(internal)
}

pub fn simulate(config: &Path, output: Option<&Path>) -> CliResult {
    let cfg: ProtocolConfig =
        serde_json::from_str(&read(config)?).map_err(|e| usage(format!("{}: {e}", config.display())))?;
    cfg.validate().map_err(usage)?;
    let run = run_protocol(&cfg).map_err(internal)?;
    let mut json = serde_json::to_vec_pretty(&run).map_err(internal)?;
    json.push(b'\n');
    emit(output, &json)?;
    summary(output, &run.summary());
    Ok(())
}

pub struct RateArgs {
    pub m_total: u64,
    pub qber: f64,
    pub eps: f64,
    pub eps_ec: f64,
    pub f_ec: f64,
    pub c_bar: f64,
    pub delta: Option<f64>,
    pub delta_term: DeltaTermArg,
}

impl RateArgs {
    fn check(&self) -> CliResult {
        let bad = |name: &str, v: f64| Err(usage(format!("--{name} = {v} is out of range")));
        if !(0.0..0.5).contains(&self.qber) {
            return bad("qber", self.qber);
        }
        for (name, v) in [("eps", self.eps), ("eps-ec", self.eps_ec)] {
            if !(v > 0.0 && v < 1.0) {
                return bad(name, v);
            }
        }
        if !(self.f_ec >= 1.0 && self.f_ec.is_finite()) {
            return bad("f-ec", self.f_ec);
        }
        if !(self.c_bar > 0.0 && self.c_bar <= 1.0) {
            return bad("c-bar", self.c_bar);
        }
        if let Some(d) = self.delta.filter(|d| !(0.0..=0.5).contains(d)) {
            return bad("delta", d);
        }
        Ok(())
    }

    fn run(&self, m_total: u64) -> CliResult<RateReport> {
        // the optimiser chooses ε̄ and ε̄′ itself; only ε and ε_EC are read
        let budget = SecurityBudget::new(self.eps, self.eps_ec, 0.5 * self.eps, 0.05 * self.eps).map_err(usage)?;
        let opts = RateOptions {
            c_bar: self.c_bar,
            delta: self.delta,
            delta_term: match self.delta_term {
                DeltaTermArg::Reciprocal => DeltaTerm::Reciprocal,
                DeltaTermArg::Sqrt => DeltaTerm::Sqrt,
            },
        };
        Ok(optimize_rate(m_total, self.qber, &budget, LeakModel::Efficiency(self.f_ec), &opts))
    }
}

/// `M=a:b:steps` → geometrically spaced signal counts.
fn parse_sweep(spec: &str) -> CliResult<Vec<u64>> {
    let err = || usage(format!("--sweep expects M=a:b:steps, got `{spec}`"));
    let range = spec.strip_prefix("M=").ok_or_else(err)?;
    let parts: Vec<&str> = range.split(':').collect();
    let [a, b, steps] = parts[..] else {
        return Err(err());
    };
    let (a, b) = (parse_count(a).map_err(usage)?, parse_count(b).map_err(usage)?);
    let steps = parse_count(steps).map_err(usage)? as usize;
    if a > b {
        return Err(usage(format!("sweep start {a} exceeds end {b}")));
    }
    Ok((0..steps)
        .map(|i| {
            if steps == 1 {
                return a;
            }
            let x = i as f64 / (steps - 1) as f64;
            (a as f64 * (b as f64 / a as f64).powf(x)).round() as u64
        })
        .collect())
}

pub fn rate(args: RateArgs, sweep: Option<&str>, output: Option<&Path>) -> CliResult {
    args.check()?;
    match sweep {
        None => {
            let report = args.run(args.m_total)?;
            let mut json = serde_json::to_vec_pretty(&report).map_err(internal)?;
            json.push(b'\n');
            emit(output, &json)?;
            summary(
                output,
                &format!(
                    "M={} qber={} r={} l={} n={} feasible={}",
                    report.m_total, report.qber, report.r_per_signal, report.l_max, report.n, report.feasible
                ),
            );
        }
        Some(spec) => {
            let rows = parse_sweep(spec)?
                .into_iter()
                .map(|m| {
                    let r = args.run(m)?;
                    Ok(vec![
                        m.to_string(),
                        r.n.to_string(),
                        r.k.to_string(),
                        num(r.eps_bar),
                        num(r.eps_bar_prime),
                        opt(r.nu_star),
                        opt(r.eps_pa_at_nu_star),
                        r.l_max.to_string(),
                        num(r.r_sifted),
                        num(r.r_per_signal),
                    ])
                })
                .collect::<CliResult<Vec<_>>>()?;
            let header = [
                "M", "n", "k", "eps_bar", "eps_bar_prime", "nu_star", "eps_pa", "l", "r_sifted", "r_per_signal",
            ];
            emit(output, &csv_bytes(&header, rows)?)?;
        }
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
            .collect(),
    }
}

pub fn capacity(gamma_min: f64, gamma_max: f64, steps: usize, output: Option<&Path>) -> CliResult {
    if !(0.0 <= gamma_min && gamma_min <= gamma_max && gamma_max <= 1.0) || steps == 0 {
        return Err(usage("need 0 ≤ gamma-min ≤ gamma-max ≤ 1 and steps ≥ 1"));
    }
    let points = capacity_sweep(&linspace(gamma_min, gamma_max, steps)).map_err(usage)?;
    let rows = points.iter().map(|p| {
        vec![
            num(p.gamma),
            num(p.q),
            num(p.a_star),
            p.degradable.to_string(),
            num(p.max_coherent_info),
        ]
    });
    emit(output, &csv_bytes(&["gamma", "q", "a_star", "degradable", "max_coherent_info"], rows)?)
}

pub fn curve(gamma: f64, points: usize, output: Option<&Path>) -> CliResult {
    if points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    let values = coherent_info_curve(gamma, &linspace(0.0, 1.0, points)).map_err(usage)?;
    emit(output, &csv_bytes(&["a", "I"], values.iter().map(|&(a, i)| vec![num(a), num(i)]))?)
}

pub fn entropy(input: &Path, json: bool) -> CliResult {
    let parsed: EntropyInput =
        serde_json::from_str(&read(input)?).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    let table = parsed.evaluate()?;
    if json {
        let items: Vec<_> = table
            .iter()
            .map(|(name, v)| serde_json::json!({ "measure": name, "value": v }))
            .collect();
        let mut out = serde_json::to_vec_pretty(&items).map_err(internal)?;
        out.push(b'\n');
        emit(None, &out)
    } else {
        let width = table.iter().map(|(n, _)| n.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (name, v) in &table {
            out += &format!("{name:<width$}  {v}\n");
        }
        emit(None, out.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_spec_parsing() {
        assert_eq!(parse_sweep("M=1e4:1e6:3").unwrap(), vec![10_000, 100_000, 1_000_000]);
        assert_eq!(parse_sweep("M=100:100:1").unwrap(), vec![100]);
        assert!(parse_sweep("N=1:2:3").is_err());
        assert!(parse_sweep("M=5:2:3").is_err());
        assert!(parse_sweep("M=1:2").is_err());
    }

    #[test]
    fn linspace_hits_endpoints() {
        let g = linspace(0.0, 0.5, 11);
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 0.5);
        assert_eq!(linspace(0.3, 0.9, 1), vec![0.3]);
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1e-10, 0.7213512345678901, 1.0 / 3.0, -2.5e-7, 3e20, 0.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
