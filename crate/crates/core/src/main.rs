//! Command-line front end: census tables, density series, verification
//! suites and the brute-force sweep, with CSV/JSON emission.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage
//! or configuration errors. `LOG_LEVEL` (error|warn|info|debug) controls
//! logging; the default is warn.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use sts_census::formulas::{self, CensusRow, ADDITIVE_CONV_CAP, DEFAULT_TABLE_N_MAX};
use sts_census::origami;
use sts_census::verify::{self, Suite, VerifyOptions};

#[derive(Parser)]
#[command(name = "sts-census", version, about = "Census of primitive square-tiled \
surfaces of genus two by cylinder diagram", max_term_width = 100)]
struct Cli {
    /// Worker threads for parallel sweeps (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    ArithIdentities,
    IntermediateSums,
    ShearLemma,
    QuadrupleLemma,
    ParamOracle,
    BuilderContract,
    Absper,
    Bruteforce,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::ArithIdentities => Suite::ArithIdentities,
            SuiteArg::IntermediateSums => Suite::IntermediateSums,
            SuiteArg::ShearLemma => Suite::ShearLemma,
            SuiteArg::QuadrupleLemma => Suite::QuadrupleLemma,
            SuiteArg::ParamOracle => Suite::ParamOracle,
            SuiteArg::BuilderContract => Suite::BuilderContract,
            SuiteArg::Absper => Suite::AbsPer,
            SuiteArg::Bruteforce => Suite::BruteForce,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit one census row per n: the counts A, B, C, D and the total E.
    Table {
        #[arg(long, default_value_t = 4)]
        n_min: u64,
        #[arg(long, default_value_t = DEFAULT_TABLE_N_MAX as u64)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Output path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the diagram density series A/E, B/E, C/E, D/E per n.
    Densities {
        #[arg(long, default_value_t = 4)]
        n_min: u64,
        #[arg(long, default_value_t = 101)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one verification suite and report checks run and failed.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Override the suite's default range of n.
        #[arg(long)]
        n_max: Option<u64>,
        /// Permit the n = 8 sweep (1.6e9 permutation pairs).
        #[arg(long)]
        allow_n8: bool,
    },
    /// Sweep all permutation pairs at one n and report the class counts.
    Bruteforce {
        #[arg(long)]
        n: u64,
        /// Permit the n = 8 sweep (1.6e9 permutation pairs).
        #[arg(long)]
        allow_n8: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum AppError {
    Usage(String),
    VerifyFailed,
}

fn usage<T>(msg: impl Into<String>) -> Result<T, AppError> {
    Err(AppError::Usage(msg.into()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LOG_LEVEL", "warn"))
        .init();
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers < 1 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .expect("worker pool configured before first use");
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::VerifyFailed) => ExitCode::from(1),
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>, AppError> {
    match out {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| AppError::Usage(format!("cannot create {}: {e}", path.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

fn io_usage(e: io::Error) -> AppError {
    AppError::Usage(format!("write failed: {e}"))
}

fn census_rows(n_min: u64, n_max: u64) -> Result<Vec<CensusRow>, AppError> {
    if n_min < 4 {
        return usage(format!("--n-min must be at least 4, got {n_min}"));
    }
    if n_max < n_min {
        return usage(format!("empty range: --n-min {n_min} exceeds --n-max {n_max}"));
    }
    if n_max > ADDITIVE_CONV_CAP as u64 {
        return usage(format!(
            "--n-max {n_max} exceeds the additive-convolution cap {ADDITIVE_CONV_CAP}"
        ));
    }
    let conv = formulas::conv_term_batch(n_max as usize)
        .map_err(|e| AppError::Usage(format!("table construction failed: {e}")))?;
    Ok((n_min..=n_max)
        .into_par_iter()
        .map(|n| CensusRow::compute(n, &conv))
        .collect())
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Table { n_min, n_max, format, out } => {
            let rows = census_rows(n_min, n_max)?;
            let mut w = open_out(&out)?;
            match format {
                Format::Csv => {
                    writeln!(w, "n,A,B,C,D,E").map_err(io_usage)?;
                    for r in &rows {
                        writeln!(w, "{},{},{},{},{},{}", r.n, r.a, r.b, r.c, r.d, r.e)
                            .map_err(io_usage)?;
                    }
                }
                Format::Json => {
                    for r in &rows {
                        serde_json::to_writer(&mut w, r)
                            .map_err(|e| AppError::Usage(format!("serialization: {e}")))?;
                        writeln!(w).map_err(io_usage)?;
                    }
                }
            }
            w.flush().map_err(io_usage)
        }
        Command::Densities { n_min, n_max, format, out } => {
            let rows = census_rows(n_min, n_max)?;
            let ratio = |(num, den): (i128, i128)| num as f64 / den as f64;
            let mut w = open_out(&out)?;
            match format {
                Format::Csv => {
                    writeln!(w, "n,rA,rB,rC,rD").map_err(io_usage)?;
                    for r in &rows {
                        writeln!(
                            w,
                            "{},{},{},{},{}",
                            r.n,
                            ratio(r.ratio_a),
                            ratio(r.ratio_b),
                            ratio(r.ratio_c),
                            ratio(r.ratio_d)
                        )
                        .map_err(io_usage)?;
                    }
                }
                Format::Json => {
                    for r in &rows {
                        let obj = serde_json::json!({
                            "n": r.n,
                            "rA": ratio(r.ratio_a),
                            "rB": ratio(r.ratio_b),
                            "rC": ratio(r.ratio_c),
                            "rD": ratio(r.ratio_d),
                        });
                        serde_json::to_writer(&mut w, &obj)
                            .map_err(|e| AppError::Usage(format!("serialization: {e}")))?;
                        writeln!(w).map_err(io_usage)?;
                    }
                }
            }
            w.flush().map_err(io_usage)
        }
        Command::Verify { suite, n_max, allow_n8 } => {
            let suite: Suite = suite.into();
            if let Some(n_max) = n_max {
                if n_max < 4 {
                    return usage(format!("--n-max must be at least 4, got {n_max}"));
                }
                if suite == Suite::BruteForce && n_max > 8 {
                    return usage("brute force supports n at most 8");
                }
                if suite == Suite::BruteForce && n_max == 8 && !allow_n8 {
                    return usage("the n = 8 sweep requires --allow-n8");
                }
            }
            let opts = VerifyOptions {
                n_max,
                allow_n8,
                inject_failure: std::env::var("STS_VERIFY_INJECT_FAILURE").is_ok_and(|v| v == "1"),
            };
            let start = Instant::now();
            let report = verify::run_suite(suite, opts);
            println!(
                "suite {}: {} checks, {} failures ({:.2}s)",
                report.suite.name(),
                report.checks,
                report.failures.len(),
                start.elapsed().as_secs_f64()
            );
            for f in report.failures.iter().take(20) {
                println!("  FAIL: {f}");
            }
            if report.failures.len() > 20 {
                println!("  ... and {} more", report.failures.len() - 20);
            }
            if report.passed() {
                Ok(())
            } else {
                Err(AppError::VerifyFailed)
            }
        }
        Command::Bruteforce { n, allow_n8, out } => {
            if !(4..=8).contains(&n) {
                return usage(format!("brute force supports 4 <= n <= 8, got {n}"));
            }
            if n == 8 && !allow_n8 {
                return usage("the n = 8 sweep requires --allow-n8");
            }
            let start = Instant::now();
            let census = origami::brute_force_census(n)
                .map_err(|e| AppError::Usage(e.to_string()))?;
            let report = serde_json::json!({
                "n": census.n,
                "H11": {
                    "A": census.h11[0],
                    "B": census.h11[1],
                    "C": census.h11[2],
                    "D": census.h11[3],
                },
                "H2": { "F": census.f, "G": census.g },
                "elapsed_seconds": start.elapsed().as_secs_f64(),
            });
            let mut w = open_out(&out)?;
            serde_json::to_writer(&mut w, &report)
                .map_err(|e| AppError::Usage(format!("serialization: {e}")))?;
            writeln!(w).map_err(io_usage)?;
            w.flush().map_err(io_usage)
        }
    }
}
