//! `qkd` — reproducible experiments on top of `qkd-core`.
//!
//! Exit codes: 0 on success (an aborted protocol run is a success), 2 on
//! usage or configuration errors, 1 when an internal invariant fails.

mod commands;
mod entropy_input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "qkd", version, about = "Finite-key QKD simulation, security bounds and channel capacities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DeltaTermArg {
    Reciprocal,
    Sqrt,
}

#[derive(Subcommand)]
enum Command {
    /// Run the BB84 pipeline from a JSON configuration and write the
    /// full transcript as JSON.
    Simulate {
        /// Run configuration (JSON).
        config: PathBuf,
        /// Write the run JSON here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Optimise the finite-key rate for a given number of signals and QBER.
    Rate {
        /// Number of transmitted signals.
        #[arg(short = 'M', long = "signals", default_value = "1e7", value_parser = parse_count)]
        m_total: u64,
        #[arg(long, default_value_t = 0.01)]
        qber: f64,
        /// Target security ε.
        #[arg(long, default_value = "1e-9")]
        eps: f64,
        /// Correctness failure ε_EC.
        #[arg(long, default_value = "1e-10")]
        eps_ec: f64,
        /// Reconciliation efficiency: leak_EC = f·n·h(Q).
        #[arg(long, default_value_t = 1.1)]
        f_ec: f64,
        /// Measurement overlap.
        #[arg(long, default_value_t = 0.5)]
        c_bar: f64,
        /// QBER threshold; defaults to the QBER itself.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, value_enum, default_value = "reciprocal")]
        delta_term: DeltaTermArg,
        /// `M=a:b:steps`, geometrically spaced; emits CSV.
        #[arg(long)]
        sweep: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quantum capacity of the amplitude-damping channel (CSV).
    Capacity {
        #[arg(long, default_value_t = 0.0)]
        gamma_min: f64,
        #[arg(long, default_value_t = 0.5)]
        gamma_max: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        /// Emit the coherent-information curve I(a) at this γ instead.
        #[arg(long)]
        curve: Option<f64>,
        /// Number of `a` points on the curve.
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Table of entropic quantities for a distribution, joint
    /// distribution or bipartite state read from JSON.
    Entropy {
        input: PathBuf,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

/// Accepts integers and scientific notation such as `1e7`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !(v >= 1.0 && v.fract() == 0.0 && v < 2f64.powi(63)) {
        return Err(format!("`{s}` is not a positive integer"));
    }
    Ok(v as u64)
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or invalid input.
    Usage(String),
    /// A failure that valid input should never trigger.
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate { config, output } => commands::simulate(&config, output.as_deref()),
        Command::Rate {
            m_total,
            qber,
            eps,
            eps_ec,
            f_ec,
            c_bar,
            delta,
            delta_term,
            sweep,
            output,
        } => commands::rate(
            commands::RateArgs {
                m_total,
                qber,
                eps,
                eps_ec,
                f_ec,
                c_bar,
                delta,
                delta_term,
            },
            sweep.as_deref(),
            output.as_deref(),
        ),
        Command::Capacity {
            gamma_min,
            gamma_max,
            steps,
            curve,
            points,
            output,
        } => match curve {
            Some(gamma) => commands::curve(gamma, points, output.as_deref()),
            None => commands::capacity(gamma_min, gamma_max, steps, output.as_deref()),
        },
        Command::Entropy { input, json } => commands::entropy(&input, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Internal(msg) => eprintln!("internal error: {msg}"),
            }
            ExitCode::from(e.code())
        }
    }
}
