//! Output rendering: every command builds one document and prints it once.
//!
//! JSON is a single compact document (serde); floats are emitted with
//! shortest round-trip precision by both the JSON and CSV paths, so parsing
//! a value back yields the identical bits. Plain output is a fixed-width
//! human-readable table.

use clap::ValueEnum;
use pok_core::{
    ModeBounds, ModeResult, OrderKParams, PmfTable, ThresholdReport, VerificationReport,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Plain,
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string(doc).expect("documents serialize");
    out.push('\n');
    out
}

fn join_modes(modes: &[u64]) -> String {
    modes
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn brace_set(modes: &[u64]) -> String {
    let inner = modes
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{inner}}}")
}

#[derive(Serialize)]
struct PmfRow {
    x: u64,
    pmf: f64,
    cumulative: f64,
}

#[derive(Serialize)]
struct PmfDoc<'a> {
    params: &'a OrderKParams,
    engine: &'static str,
    rows: Vec<PmfRow>,
}

pub fn pmf(table: &PmfTable, format: OutputFormat) -> String {
    let rows: Vec<PmfRow> = table
        .values()
        .iter()
        .zip(table.cumulative())
        .enumerate()
        .map(|(x, (&pmf, cumulative))| PmfRow {
            x: x as u64,
            pmf,
            cumulative,
        })
        .collect();

    match format {
        OutputFormat::Json => json(&PmfDoc {
            params: table.params(),
            engine: table.engine().as_str(),
            rows,
        }),
        OutputFormat::Csv => {
            let mut out = String::from("x,pmf,cumulative\n");
            for row in rows {
                out.push_str(&format!("{},{},{}\n", row.x, row.pmf, row.cumulative));
            }
            out
        }
        OutputFormat::Plain => {
            let params = table.params();
            let mut out = format!("{params}, engine = {}\n", table.engine());
            out.push_str(&format!(
                "{:>8}  {:>24}  {:>24}\n",
                "x", "pmf", "cumulative"
            ));
            for row in rows {
                out.push_str(&format!(
                    "{:>8}  {:>24e}  {:>24e}\n",
                    row.x, row.pmf, row.cumulative
                ));
            }
            out
        }
    }
}

#[derive(Serialize)]
struct ModeDoc<'a> {
    params: &'a OrderKParams,
    path: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_exact: Option<&'a str>,
    modes: &'a [u64],
    max_prob: f64,
    bounds: &'a ModeBounds,
    certified: bool,
    search_bound: u64,
    tie_tolerance: f64,
}

pub fn mode(
    result: &ModeResult,
    bounds: &ModeBounds,
    lambda_exact: Option<&str>,
    format: OutputFormat,
) -> String {
    let path = if lambda_exact.is_some() {
        "exact"
    } else {
        "float"
    };
    match format {
        OutputFormat::Json => json(&ModeDoc {
            params: &result.params,
            path,
            lambda_exact,
            modes: &result.modes,
            max_prob: result.max_prob,
            bounds,
            certified: result.certified,
            search_bound: result.search_bound,
            tie_tolerance: result.tie_tolerance,
        }),
        OutputFormat::Csv => {
            let lambda_text = match lambda_exact {
                Some(exact) => exact.to_string(),
                None => result.params.lambda().to_string(),
            };
            let mut out = String::from(
                "k,lambda,path,modes,max_prob,lower,upper,certified,search_bound,tie_tolerance\n",
            );
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                result.params.k(),
                lambda_text,
                path,
                join_modes(&result.modes),
                result.max_prob,
                bounds.lower,
                bounds.upper,
                result.certified,
                result.search_bound,
                result.tie_tolerance,
            ));
            out
        }
        OutputFormat::Plain => {
            let lambda = match lambda_exact {
                Some(exact) => format!("{exact} (exact path)"),
                None => format!("{} (float path)", result.params.lambda()),
            };
            let modes = result
                .modes
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            format!(
                "k = {}, lambda = {}\n\
                 modes         : {}\n\
                 max prob      : {}\n\
                 bounds        : [{}, {}]\n\
                 search bound  : {}\n\
                 tie tolerance : {}\n\
                 certified     : {}\n",
                result.params.k(),
                lambda,
                modes,
                result.max_prob,
                bounds.lower,
                bounds.upper,
                result.search_bound,
                result.tie_tolerance,
                result.certified,
            )
        }
    }
}

#[derive(Serialize)]
struct ScanParams {
    k: u32,
}

#[derive(Serialize)]
struct ScanDoc<'a> {
    params: ScanParams,
    scan_range: (f64, f64),
    grid_step: f64,
    transitions: &'a [pok_core::Transition],
    certified: bool,
}

pub fn scan(report: &ThresholdReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&ScanDoc {
            params: ScanParams { k: report.k },
            scan_range: report.scan_range,
            grid_step: report.grid_step,
            transitions: &report.transitions,
            certified: true,
        }),
        OutputFormat::Csv => {
            let mut out =
                String::from("lambda_star,bracket_lo,bracket_hi,modes_below,modes_above\n");
            for t in &report.transitions {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    t.lambda_star,
                    t.bracket.0,
                    t.bracket.1,
                    join_modes(&t.modes_below),
                    join_modes(&t.modes_above),
                ));
            }
            out
        }
        OutputFormat::Plain => {
            let mut out = format!(
                "k = {}, range ({}, {}), step {}\n",
                report.k, report.scan_range.0, report.scan_range.1, report.grid_step
            );
            if report.transitions.is_empty() {
                out.push_str("no transitions\n");
            } else {
                out.push_str(&format!("{} transition(s)\n", report.transitions.len()));
                for t in &report.transitions {
                    out.push_str(&format!(
                        "  lambda* = {}  bracket [{}, {}]  modes {} -> {}\n",
                        t.lambda_star,
                        t.bracket.0,
                        t.bracket.1,
                        brace_set(&t.modes_below),
                        brace_set(&t.modes_above),
                    ));
                }
            }
            out
        }
    }
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    reports: &'a [VerificationReport],
    passed: bool,
}

pub fn verify(reports: &[VerificationReport], format: OutputFormat) -> String {
    let passed = reports.iter().all(|r| r.passed);
    match format {
        OutputFormat::Json => {
            if let [single] = reports {
                json(single)
            } else {
                json(&VerifyDoc { reports, passed })
            }
        }
        OutputFormat::Csv => {
            let mut out = String::from("claim_id,passed,worst_margin,failures\n");
            for r in reports {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.claim_id,
                    r.passed,
                    r.worst_margin,
                    r.failures.len()
                ));
            }
            out
        }
        OutputFormat::Plain => {
            let mut out = String::new();
            for r in reports {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "{:<22} {}  worst margin {:e}\n",
                    r.claim_id.to_string(),
                    verdict,
                    r.worst_margin
                ));
                for f in &r.failures {
                    out.push_str(&format!(
                        "    {}: expected {}, observed {}\n",
                        f.params, f.expected, f.observed
                    ));
                }
            }
            if reports.len() > 1 {
                if passed {
                    out.push_str("all suites passed\n");
                } else {
                    let failed = reports.iter().filter(|r| !r.passed).count();
                    out.push_str(&format!("{failed} suite(s) failed\n"));
                }
            }
            out
        }
    }
}
