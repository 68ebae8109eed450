//! `brauer-count`: run counting experiments, compute predicted exponents,
//! evaluate Euler products and run the self-verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

mod config;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use brauer_count::analytic::{
    delange_constant, factorization_check, landau_ramanujan, landau_series_g1,
    partial_euler_product, singular_limit, AnalyticError, CharacterGroup, QuadCharacter,
};
use brauer_count::arith::Rational;
use brauer_count::count::{fit_log_power, landau_counts, run_count, series_to_csv, CountJob};
use brauer_count::model::build_model;
use brauer_count::verify::{run_all, VerifyOptions};
use clap::{Parser, Subcommand};

use config::{load_config, load_family, ExperimentConfig};

#[derive(Parser)]
#[command(name = "brauer-count", version, about = "Counting rational points in families with Brauer obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count points of bounded height with soluble fibre and write a CSV.
    Count {
        /// Experiment configuration (JSON).
        config: PathBuf,
        /// Override the configured output path.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the configured worker count.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print the divisor table, Delta and the predicted exponent.
    Delta {
        /// Family spec or experiment configuration (JSON).
        spec: PathBuf,
    },
    /// Partial Euler products, G-estimates or singular limits.
    Euler {
        /// Fundamental discriminants generating the character group.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        group: Vec<i64>,
        /// The character chi: 1 for the principal character or a discriminant.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        chi: i64,
        /// Real points s > 1.
        #[arg(long, value_delimiter = ',', default_value = "1.05,1.1,1.5,2")]
        s: Vec<f64>,
        /// Extract the singular limit at s = 1 instead.
        #[arg(long)]
        limit: bool,
        /// Two increasing prime cutoffs.
        #[arg(long, value_delimiter = ',', default_value = "100000,1000000")]
        cutoffs: Vec<u64>,
    },
    /// Sums of two squares against the Landau-Ramanujan constant.
    Landau {
        /// Largest bound, at most 10^9.
        #[arg(long, default_value_t = 100_000_000)]
        x: u64,
        /// Intermediate bounds; defaults to powers of ten from 10^4.
        #[arg(long, value_delimiter = ',')]
        checkpoints: Vec<u64>,
    },
    /// Run the oracle suites.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Corrupt one Hilbert symbol to check that the suite notices.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count {
            config,
            output,
            workers,
        } => cmd_count(config, output, workers),
        Command::Delta { spec } => cmd_delta(spec),
        Command::Euler {
            group,
            chi,
            s,
            limit,
            cutoffs,
        } => cmd_euler(&group, chi, &s, limit, &cutoffs),
        Command::Landau { x, checkpoints } => cmd_landau(x, checkpoints),
        Command::Verify { seed, inject_fault } => cmd_verify(seed, inject_fault),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn env_workers() -> Result<Option<usize>, Failure> {
    match std::env::var("WORKERS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Input(format!("WORKERS={v} is not a positive integer"))),
        Err(_) => Ok(None),
    }
}

fn cmd_count(path: PathBuf, output: Option<PathBuf>, workers: Option<usize>) -> CmdResult {
    let cfg: ExperimentConfig = load_config(&path)?;
    let model = build_model(&cfg.family)?;
    let job = CountJob {
        family: cfg.family.clone(),
        height: cfg.height_spec(model.base_dim),
        checkpoints: cfg.checkpoints.iter().map(|&b| b as u128).collect(),
        workers: env_workers()?.or(workers).unwrap_or(cfg.workers),
    };
    let series = run_count(&job)?;
    let csv = series_to_csv(&series);
    let destination = output.or(cfg.output);
    match &destination {
        Some(p) => fs::write(p, csv).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => io::stdout().write_all(csv.as_bytes())?,
    }
    let last = series.rows.last().expect("checkpoints are nonempty");
    let fitted = match fit_log_power(&series) {
        Ok(fit) => format!("{:.4}", fit.theta),
        Err(e) => format!("n/a ({e})"),
    };
    let summary = format!(
        "B = {}, N = {}, baseline = {}, predicted theta = {} ({}), fitted theta = {}, height = {}",
        last.b,
        last.n,
        last.baseline,
        model.predicted_exponent_f64(),
        model.predicted_exponent,
        fitted,
        cfg.height.label(),
    );
    // without an output file stdout carries the CSV
    if destination.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn cmd_delta(path: PathBuf) -> CmdResult {
    let family = load_family(&path)?;
    let model = build_model(&family)?;
    println!("{model}");
    println!(
        "pointwise evaluation: {}",
        if model.evaluable { "available" } else { "unavailable" }
    );
    for c in &model.caveats {
        println!("note: {c}");
    }
    Ok(())
}

fn parse_character(d: i64) -> Result<QuadCharacter, AnalyticError> {
    if d == 1 {
        Ok(QuadCharacter::Principal)
    } else {
        QuadCharacter::kronecker(d)
    }
}

fn cmd_euler(group: &[i64], chi: i64, s: &[f64], limit: bool, cutoffs: &[u64]) -> CmdResult {
    let r = CharacterGroup::generated_by(group)?;
    let chi = parse_character(chi)?;
    let members: Vec<String> = r.members().iter().map(|c| c.to_string()).collect();
    println!("R = {{{}}}, chi = {chi}", members.join(", "));
    if cutoffs.len() != 2 {
        return Err(Failure::Input("need exactly two cutoffs".to_string()));
    }
    let (p1, p2) = (cutoffs[0], cutoffs[1]);
    if limit {
        let lim = match singular_limit(&r, &chi, p2) {
            Ok(l) => l,
            Err(AnalyticError::NotConverged(l)) => {
                print_limit(&l);
                return Err(Failure::Verification(format!(
                    "ladder did not stabilise (last gap {:.3e})",
                    l.last_gap
                )));
            }
            Err(e) => return Err(e.into()),
        };
        print_limit(&lim);
        return Ok(());
    }
    println!("{:>8} {:>22} {:>22} {:>22}", "s", format!("L_R(chi,s) P={p2}"), format!("G P={p1}"), format!("G P={p2}"));
    for &si in s {
        let l = partial_euler_product(&r, &chi, si, p2)?;
        let (g1, g2) = factorization_check(&r, &chi, si, p1, p2)?;
        println!("{si:>8} {l:>22.15} {g1:>22.15} {g2:>22.15}");
    }
    Ok(())
}

fn print_limit(lim: &brauer_count::analytic::SingularLimit) {
    println!("{:>4} {:>14} {:>20}", "k", "s", "estimate");
    for step in &lim.trace {
        println!("{:>4} {:>14.10} {:>20.15}", step.k, step.s, step.estimate);
    }
    for (p, c) in &lim.cutoff_trace {
        println!("cutoff {p}: {c:.15}");
    }
    println!("c = {:.12}, omega = {}, last relative gap = {:.3e}", lim.c, lim.omega, lim.last_gap);
}

fn cmd_landau(x: u64, mut checkpoints: Vec<u64>) -> CmdResult {
    if checkpoints.is_empty() {
        let mut b = 10_000u64;
        while b < x {
            checkpoints.push(b);
            b *= 10;
        }
    }
    checkpoints.retain(|&b| b < x);
    checkpoints.push(x);
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let counts = landau_counts(&checkpoints)?;
    let k = landau_ramanujan();
    println!("{:>12} {:>12} {:>20}", "x", "N(x)", "N sqrt(log x)/x");
    for (b, n) in checkpoints.iter().zip(&counts) {
        let ratio = *n as f64 * (*b as f64).ln().sqrt() / *b as f64;
        println!("{b:>12} {n:>12} {ratio:>20.12}");
    }
    let g1 = landau_series_g1();
    println!("K = {k:.14}");
    println!("g(1) = {g1:.14}");
    println!("g(1)/Gamma(1/2) = {:.14}", delange_constant(g1, Rational::new(1, 2))?);
    Ok(())
}

fn cmd_verify(seed: u64, inject_fault: bool) -> CmdResult {
    let reports = run_all(VerifyOptions { seed, inject_fault });
    for r in &reports {
        println!("{r}");
    }
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(Failure::Verification(format!(
            "{}: {}",
            r.name,
            r.failure.as_deref().unwrap_or_default()
        ))),
        None => Ok(()),
    }
}
