//! `pok` — Poisson distribution of order k from the command line.
//!
//! Subcommands: `pmf` (probability tables), `mode` (certified mode search,
//! float or exact path), `scan` (mode-transition location), `verify` (claim
//! suites). Output formats: plain, csv, json.
//!
//! Exit codes: 0 success, 1 computational failure (engine refusal,
//! certification failure, failed verification suite), 2 usage error.

mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pok_core::{
    find_modes, find_modes_exact, mode_bounds, pmf_table, pmf_table_enumeration, run_all,
    run_suite, threshold_scan, ClaimId, Engine, GridOverrides, OrderKParams, RationalLambda,
    DEFAULT_ENUMERATION_CAP, DEFAULT_TIE_TOLERANCE,
};
use render::OutputFormat;

#[derive(Parser)]
#[command(
    name = "pok",
    version,
    about = "Poisson distribution of order k: pmf tables, certified modes, mode-transition scans, claim verification"
)]
struct Cli {
    /// Reserved for future randomized sweeps; accepted and ignored (all
    /// commands are deterministic)
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print f(0..=x_max) with cumulative mass
    Pmf {
        /// Order (>= 1)
        #[arg(long)]
        k: u32,
        /// Rate (> 0)
        #[arg(long)]
        lambda: f64,
        #[arg(long = "x-max")]
        x_max: u64,
        /// recurrence (default), enumeration (ground-truth oracle, slow),
        /// or polynomial (exact coefficients, float projection)
        #[arg(long, default_value = "recurrence")]
        engine: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Certified mode search
    Mode {
        /// Order (>= 1)
        #[arg(long)]
        k: u32,
        /// Rate: decimal on the float path; "p/q" or an integer with --exact
        #[arg(long)]
        lambda: String,
        /// Compare probabilities exactly (requires a rational rate; decimal
        /// input is rejected rather than converted)
        #[arg(long)]
        exact: bool,
        /// Relative tie tolerance of the float path
        #[arg(long, default_value_t = DEFAULT_TIE_TOLERANCE)]
        tie_tolerance: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Locate mode-set transitions on a rate range
    Scan {
        /// Order (>= 1)
        #[arg(long)]
        k: u32,
        /// Smallest rate (> 0)
        #[arg(long)]
        min: f64,
        /// Largest rate
        #[arg(long)]
        max: f64,
        /// Grid step
        #[arg(long)]
        step: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Run claim verification suites
    Verify {
        /// "all" or one of: eq12_bounds, eq13_integer_lambda, prop21, prop22,
        /// proof_inequalities, normalization, mean_identity, oracle_equivalence
        claim: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
        /// Narrow or widen the order range of a suite
        #[arg(long)]
        k_min: Option<u32>,
        /// Narrow or widen the order range of a suite
        #[arg(long)]
        k_max: Option<u32>,
        /// Number of rate samples for sweep suites
        #[arg(long)]
        points: Option<usize>,
    },
}

enum CliError {
    /// Bad flags or invalid parameter domain: exit 2.
    Usage(String),
    /// The computation itself refused or failed: exit 1.
    Failure(String),
}

impl From<pok_core::Error> for CliError {
    fn from(e: pok_core::Error) -> Self {
        match e {
            pok_core::Error::EnumerationCapExceeded { .. }
            | pok_core::Error::CertificationFailed { .. } => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    code: ExitCode,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: ExitCode::SUCCESS,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            outcome.code
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Pmf {
            k,
            lambda,
            x_max,
            engine,
            format,
        } => cmd_pmf(k, lambda, x_max, &engine, format),
        Command::Mode {
            k,
            lambda,
            exact,
            tie_tolerance,
            format,
        } => cmd_mode(k, &lambda, exact, tie_tolerance, format),
        Command::Scan {
            k,
            min,
            max,
            step,
            format,
        } => cmd_scan(k, min, max, step, format),
        Command::Verify {
            claim,
            format,
            k_min,
            k_max,
            points,
        } => cmd_verify(&claim, format, k_min, k_max, points),
    }
}

fn enumeration_cap() -> Result<u64, CliError> {
    match std::env::var("POK_ENUM_CAP") {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map_err(|e| CliError::Usage(format!("POK_ENUM_CAP {raw:?}: {e}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ENUMERATION_CAP),
        Err(e) => Err(CliError::Usage(format!("POK_ENUM_CAP: {e}"))),
    }
}

fn cmd_pmf(
    k: u32,
    lambda: f64,
    x_max: u64,
    engine: &str,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let engine: Engine = engine.parse()?;
    let params = OrderKParams::new(k, lambda)?;
    let table = match engine {
        Engine::Enumeration => pmf_table_enumeration(&params, x_max, enumeration_cap()?)?,
        other => pmf_table(&params, x_max, other)?,
    };
    Ok(Outcome::ok(render::pmf(&table, format)))
}

fn cmd_mode(
    k: u32,
    lambda: &str,
    exact: bool,
    tie_tolerance: f64,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let (result, lambda_exact) = if exact {
        let rational: RationalLambda = lambda.parse()?;
        (find_modes_exact(k, &rational)?, Some(rational.to_string()))
    } else {
        let rate: f64 = lambda.parse().map_err(|e| {
            CliError::Usage(format!(
                "--lambda {lambda:?}: {e} (fractions like p/q need --exact)"
            ))
        })?;
        let params = OrderKParams::new(k, rate)?;
        (find_modes(&params, tie_tolerance)?, None)
    };
    let bounds = mode_bounds(&result.params);
    Ok(Outcome::ok(render::mode(
        &result,
        &bounds,
        lambda_exact.as_deref(),
        format,
    )))
}

fn cmd_scan(
    k: u32,
    min: f64,
    max: f64,
    step: f64,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let report = threshold_scan(k, min, max, step)?;
    Ok(Outcome::ok(render::scan(&report, format)))
}

fn cmd_verify(
    claim: &str,
    format: OutputFormat,
    k_min: Option<u32>,
    k_max: Option<u32>,
    points: Option<usize>,
) -> Result<Outcome, CliError> {
    let overrides = GridOverrides {
        k_min,
        k_max,
        lambda_points: points,
        lambda_max: None,
    };
    let reports = if claim == "all" {
        run_all(&overrides)?
    } else {
        vec![run_suite(claim.parse::<ClaimId>()?, &overrides)?]
    };
    let passed = reports.iter().all(|r| r.passed);
    let text = render::verify(&reports, format);
    Ok(Outcome {
        text,
        code: if passed {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        },
    })
}
