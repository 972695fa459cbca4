//! Machine-runnable verification suites.
//!
//! Every structural claim about the distribution is packaged as a named,
//! deterministic sweep that produces a [`VerificationReport`]: the exact
//! grid it ran on, a pass/fail flag, every failure, and the tightest margin
//! observed (near-misses that a boolean would hide).
//!
//! Claim registry:
//!
//! * `eq12_bounds` — every certified mode lies in
//!   `[max(0, floor(mu) - k(k+1)/2 + 1 - d), floor(mu)]`, `d = 1` iff `k = 1`.
//!   Margin: distance (in support steps) from a mode to the nearer bound.
//! * `eq13_integer_lambda` — for integer rates and `2 <= k <= 5` the unique
//!   mode is `lambda*k(k+1)/2 - floor(k/2)`. Margin: relative gap between
//!   the mode probability and the runner-up.
//! * `prop21` — for `0 < lambda < 2/(k(k+1))` the mode set is exactly `{0}`.
//!   Margin: relative gap between `f(0)` and the largest pmf value at
//!   `x >= 1` on the certified range.
//! * `prop22` — for `k = 2` and rational `0 < lambda < 1`, the exact
//!   classifier (sign of `lambda + lambda^2/2 - 1`) agrees with the exact
//!   certified search. Margin: distance `|lambda + lambda^2/2 - 1|`.
//! * `proof_inequalities` — `f(0) > f(1)` for `k = 2` on `(0, 1)` and
//!   `f(1) < f(2)` on `(0, 5]`, strictly. Margin: relative gap.
//! * `normalization` — cumulative mass grows monotonically from below and
//!   exceeds `1 - 1e-9` at the documented truncation. Margin: slack above
//!   the requirement.
//! * `mean_identity` — the truncated first moment matches `lambda*k(k+1)/2`
//!   within `1e-6` absolute. Margin: tolerance minus deviation.
//! * `oracle_equivalence` — recurrence and polynomial engines match tuple
//!   enumeration (relative `1e-12` and `1e-10`), and the polynomial
//!   coefficients equal the enumeration-derived rationals exactly for
//!   `k <= 4`, `x <= 12`. Margin: tolerance minus observed deviation.
//!
//! All grids are closed-form deterministic (no RNG), so two runs of the same
//! suite produce identical reports.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::{
    find_modes, find_modes_exact, integer_lambda_mode, mode_bounds, order2_mode_set,
    zero_mode_threshold, Order2Lambda, DEFAULT_TIE_TOLERANCE,
};
use crate::params::{OrderKParams, RationalLambda};
use crate::pmf::{enumeration_coeffs, pmf_table_recurrence, poly_coeffs_table};

/// Rates every canonical sweep evaluates.
pub const CANONICAL_LAMBDAS: [f64; 6] = [0.1, 0.3, 0.7, 1.0, 1.7, 3.0];

const NORMALIZATION_SHORTFALL: f64 = 1e-9;
const PARTIAL_SUM_EPS: f64 = 1e-12;
const MEAN_TOLERANCE: f64 = 1e-6;
const RECURRENCE_REL_TOL: f64 = 1e-12;
const POLYNOMIAL_REL_TOL: f64 = 1e-10;

/// Names of the runnable claim suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    Eq12Bounds,
    Eq13IntegerLambda,
    Prop21,
    Prop22,
    ProofInequalities,
    Normalization,
    MeanIdentity,
    OracleEquivalence,
}

impl ClaimId {
    pub const ALL: [ClaimId; 8] = [
        ClaimId::Eq12Bounds,
        ClaimId::Eq13IntegerLambda,
        ClaimId::Prop21,
        ClaimId::Prop22,
        ClaimId::ProofInequalities,
        ClaimId::Normalization,
        ClaimId::MeanIdentity,
        ClaimId::OracleEquivalence,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::Eq12Bounds => "eq12_bounds",
            ClaimId::Eq13IntegerLambda => "eq13_integer_lambda",
            ClaimId::Prop21 => "prop21",
            ClaimId::Prop22 => "prop22",
            ClaimId::ProofInequalities => "proof_inequalities",
            ClaimId::Normalization => "normalization",
            ClaimId::MeanIdentity => "mean_identity",
            ClaimId::OracleEquivalence => "oracle_equivalence",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

/// Optional grid parameters; `None` keeps a suite's documented default.
/// Each suite validates the fields it honors against its supported range.
#[derive(Debug, Clone, Default)]
pub struct GridOverrides {
    pub k_min: Option<u32>,
    pub k_max: Option<u32>,
    /// Number of rate samples for the sweep suites.
    pub lambda_points: Option<usize>,
    /// Largest integer rate for the integer-rate suite.
    pub lambda_max: Option<f64>,
}

/// One violated check: which grid point, what was required, what was seen.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub params: String,
    pub expected: String,
    pub observed: String,
}

/// Outcome of one claim suite. `passed` holds iff `failures` is empty;
/// `worst_margin` semantics are documented per claim in the module docs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim_id: ClaimId,
    pub grid: String,
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub worst_margin: f64,
}

struct SuiteRun {
    failures: Vec<Failure>,
    worst_margin: f64,
}

impl SuiteRun {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            worst_margin: f64::INFINITY,
        }
    }

    fn margin(&mut self, margin: f64) {
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
    }

    fn fail(&mut self, params: String, expected: String, observed: String) {
        self.failures.push(Failure {
            params,
            expected,
            observed,
        });
    }

    fn report(self, claim_id: ClaimId, grid: String) -> VerificationReport {
        VerificationReport {
            claim_id,
            grid,
            passed: self.failures.is_empty(),
            failures: self.failures,
            worst_margin: self.worst_margin,
        }
    }
}

fn resolve_k_range(
    overrides: &GridOverrides,
    default: RangeInclusive<u32>,
    supported: RangeInclusive<u32>,
) -> Result<RangeInclusive<u32>> {
    let lo = overrides.k_min.unwrap_or(*default.start());
    let hi = overrides.k_max.unwrap_or(*default.end());
    if lo < *supported.start() || hi > *supported.end() || lo > hi {
        return Err(Error::InvalidOverride(format!(
            "k range {lo}..={hi} outside supported {}..={}",
            supported.start(),
            supported.end()
        )));
    }
    Ok(lo..=hi)
}

fn resolve_points(overrides: &GridOverrides, default: usize, max: usize) -> Result<usize> {
    let n = overrides.lambda_points.unwrap_or(default);
    if n < 1 || n > max {
        return Err(Error::InvalidOverride(format!(
            "lambda_points {n} outside supported 1..={max}"
        )));
    }
    Ok(n)
}

/// Truncation point at which the canonical sweeps require the mass to have
/// converged: `ceil(mu) + 40 * ceil(sqrt(mu) + 1)`.
fn truncation(params: &OrderKParams) -> u64 {
    let mu = params.mean();
    mu.ceil() as u64 + 40 * (mu.sqrt() + 1.0).ceil() as u64
}

/// Runs one claim suite with the given overrides.
pub fn run_suite(claim: ClaimId, overrides: &GridOverrides) -> Result<VerificationReport> {
    match claim {
        ClaimId::Eq12Bounds => suite_eq12_bounds(overrides),
        ClaimId::Eq13IntegerLambda => suite_eq13_integer_lambda(overrides),
        ClaimId::Prop21 => suite_prop21(overrides),
        ClaimId::Prop22 => suite_prop22(overrides),
        ClaimId::ProofInequalities => suite_proof_inequalities(overrides),
        ClaimId::Normalization => suite_normalization(overrides),
        ClaimId::MeanIdentity => suite_mean_identity(overrides),
        ClaimId::OracleEquivalence => suite_oracle_equivalence(overrides),
    }
}

/// Runs every suite, in registry order.
pub fn run_all(overrides: &GridOverrides) -> Result<Vec<VerificationReport>> {
    ClaimId::ALL
        .into_iter()
        .map(|claim| run_suite(claim, overrides))
        .collect()
}

fn suite_eq12_bounds(overrides: &GridOverrides) -> Result<VerificationReport> {
    let ks = resolve_k_range(overrides, 1..=8, 1..=12)?;
    let n = resolve_points(overrides, 200, 10_000)?;
    let (lo, hi) = (0.02f64, 5.0f64);
    let grid = format!(
        "k in {}..={}; lambda: {n} points log-spaced in ({lo}, {hi}], \
         lambda_i = {lo}*(({hi}/{lo}))^(i/{n}) for i = 1..={n}; \
         float path, tie tolerance {DEFAULT_TIE_TOLERANCE:e}; deterministic, no RNG",
        ks.start(),
        ks.end()
    );
    let mut run = SuiteRun::new();
    for k in ks {
        for i in 1..=n {
            let lambda = lo * (hi / lo).powf(i as f64 / n as f64);
            let params = OrderKParams::new(k, lambda)?;
            let result = find_modes(&params, DEFAULT_TIE_TOLERANCE)?;
            let bounds = mode_bounds(&params);
            for &m in &result.modes {
                let margin =
                    (m as i128 - bounds.lower as i128).min(bounds.upper as i128 - m as i128) as f64;
                run.margin(margin);
                if !bounds.contains(m) {
                    run.fail(
                        format!("k={k}, lambda={lambda}"),
                        format!("mode in [{}, {}]", bounds.lower, bounds.upper),
                        format!("mode {m}"),
                    );
                }
            }
        }
    }
    Ok(run.report(ClaimId::Eq12Bounds, grid))
}

fn suite_eq13_integer_lambda(overrides: &GridOverrides) -> Result<VerificationReport> {
    let ks = resolve_k_range(overrides, 2..=5, 2..=5)?;
    let lambda_max = overrides.lambda_max.unwrap_or(5.0);
    if !(1.0..=20.0).contains(&lambda_max) {
        return Err(Error::InvalidOverride(format!(
            "lambda_max {lambda_max} outside supported 1..=20"
        )));
    }
    let lambda_hi = lambda_max.floor() as u32;
    let grid = format!(
        "k in {}..={}; integer lambda in 1..={lambda_hi}; exact path (zero tolerance); deterministic",
        ks.start(),
        ks.end()
    );
    let mut run = SuiteRun::new();
    for k in ks {
        for lambda in 1..=lambda_hi {
            let expected = integer_lambda_mode(k, lambda)?;
            let exact = find_modes_exact(k, &RationalLambda::from_integer(u64::from(lambda))?)?;
            if exact.modes != [expected] {
                run.fail(
                    format!("k={k}, lambda={lambda}"),
                    format!("unique mode {{{expected}}}"),
                    format!("modes {:?}", exact.modes),
                );
            }
            let params = OrderKParams::new(k, f64::from(lambda))?;
            let table = pmf_table_recurrence(&params, exact.search_bound);
            let f_mode = table.value(expected).unwrap_or(0.0);
            let runner_up = table
                .values()
                .iter()
                .enumerate()
                .filter(|&(x, _)| x as u64 != expected)
                .map(|(_, &v)| v)
                .fold(0.0, f64::max);
            run.margin((f_mode - runner_up) / f_mode);
        }
    }
    Ok(run.report(ClaimId::Eq13IntegerLambda, grid))
}

fn suite_prop21(overrides: &GridOverrides) -> Result<VerificationReport> {
    let ks = resolve_k_range(overrides, 1..=8, 1..=12)?;
    let n = resolve_points(overrides, 50, 10_000)?;
    let grid = format!(
        "k in {}..={}; per k, {n} rates lambda_i = (2/(k(k+1))) * i/({n}+1) for i = 1..={n} \
         (uniform, strictly inside the region); float path, tie tolerance {DEFAULT_TIE_TOLERANCE:e}; deterministic",
        ks.start(),
        ks.end()
    );
    let mut run = SuiteRun::new();
    for k in ks {
        let threshold = zero_mode_threshold(k);
        for i in 1..=n {
            let lambda = threshold * i as f64 / (n + 1) as f64;
            let params = OrderKParams::new(k, lambda)?;
            let result = find_modes(&params, DEFAULT_TIE_TOLERANCE)?;
            if result.modes != [0] {
                run.fail(
                    format!("k={k}, lambda={lambda}"),
                    "unique mode {0}".to_string(),
                    format!("modes {:?}", result.modes),
                );
            }
            let x_hi = result.search_bound.max(u64::from(k) + 2);
            let table = pmf_table_recurrence(&params, x_hi);
            let f0 = table.value(0).expect("table has x = 0");
            let best_rest = table.values()[1..].iter().copied().fold(0.0, f64::max);
            run.margin((f0 - best_rest) / f0);
        }
    }
    Ok(run.report(ClaimId::Prop21, grid))
}

fn suite_prop22(overrides: &GridOverrides) -> Result<VerificationReport> {
    let n = resolve_points(overrides, 500, 100_000)?;
    let grid = format!(
        "k = 2; {n} rational rates lambda_i = i/({n}+1) for i = 1..={n}; \
         exact classifier vs exact certified search (zero tolerance); deterministic"
    );
    let mut run = SuiteRun::new();
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    for i in 1..=n {
        let lambda = RationalLambda::new(i as i64, n as i64 + 1)?;
        let expected = order2_mode_set(&Order2Lambda::Rational(lambda.clone()))?;
        let found = find_modes_exact(2, &lambda)?;
        if found.modes != expected.modes() {
            run.fail(
                format!("k=2, lambda={lambda}"),
                format!("modes {:?}", expected.modes()),
                format!("modes {:?}", found.modes),
            );
        }
        let ratio = lambda.as_ratio();
        let scaled = ratio + ratio * ratio / &two;
        let distance = (scaled - &one).abs().to_f64().unwrap_or(f64::NAN);
        run.margin(distance);
    }
    Ok(run.report(ClaimId::Prop22, grid))
}

fn suite_proof_inequalities(overrides: &GridOverrides) -> Result<VerificationReport> {
    let n = resolve_points(overrides, 100, 100_000)?;
    let grid = format!(
        "k = 2; f(0) > f(1) on lambda_i = i/({n}+1), i = 1..={n} (inside (0,1)); \
         f(1) < f(2) on lambda_i = 5*i/{n}, i = 1..={n} (inside (0,5]); \
         recurrence engine, strict float comparisons; deterministic"
    );
    let mut run = SuiteRun::new();
    for i in 1..=n {
        let lambda = i as f64 / (n + 1) as f64;
        let params = OrderKParams::new(2, lambda)?;
        let table = pmf_table_recurrence(&params, 1);
        let (f0, f1) = (table.value(0).unwrap(), table.value(1).unwrap());
        if f0 <= f1 {
            run.fail(
                format!("k=2, lambda={lambda}"),
                "f(0) > f(1)".to_string(),
                format!("f(0) = {f0}, f(1) = {f1}"),
            );
        }
        run.margin((f0 - f1) / f0);
    }
    for i in 1..=n {
        let lambda = 5.0 * i as f64 / n as f64;
        let params = OrderKParams::new(2, lambda)?;
        let table = pmf_table_recurrence(&params, 2);
        let (f1, f2) = (table.value(1).unwrap(), table.value(2).unwrap());
        if f1 >= f2 {
            run.fail(
                format!("k=2, lambda={lambda}"),
                "f(1) < f(2)".to_string(),
                format!("f(1) = {f1}, f(2) = {f2}"),
            );
        }
        run.margin((f2 - f1) / f2);
    }
    Ok(run.report(ClaimId::ProofInequalities, grid))
}

fn suite_normalization(overrides: &GridOverrides) -> Result<VerificationReport> {
    let ks = resolve_k_range(overrides, 1..=6, 1..=8)?;
    let grid = format!(
        "k in {}..={}; lambda in {CANONICAL_LAMBDAS:?}; recurrence engine summed to \
         x = ceil(mu) + 40*ceil(sqrt(mu)+1); requires monotone partial sums <= 1 + {PARTIAL_SUM_EPS:e} \
         and total mass > 1 - {NORMALIZATION_SHORTFALL:e}; deterministic",
        ks.start(),
        ks.end()
    );
    let mut run = SuiteRun::new();
    for k in ks {
        for lambda in CANONICAL_LAMBDAS {
            let params = OrderKParams::new(k, lambda)?;
            let table = pmf_table_recurrence(&params, truncation(&params));
            let mut running = 0.0;
            for (x, &v) in table.values().iter().enumerate() {
                if !(0.0..=1.0).contains(&v) {
                    run.fail(
                        format!("k={k}, lambda={lambda}, x={x}"),
                        "pmf value in [0, 1]".to_string(),
                        format!("{v}"),
                    );
                }
                running += v;
                if running > 1.0 + PARTIAL_SUM_EPS {
                    run.fail(
                        format!("k={k}, lambda={lambda}, x={x}"),
                        format!("partial sum <= 1 + {PARTIAL_SUM_EPS:e}"),
                        format!("{running}"),
                    );
                }
            }
            if running <= 1.0 - NORMALIZATION_SHORTFALL {
                run.fail(
                    format!("k={k}, lambda={lambda}"),
                    format!("total mass > 1 - {NORMALIZATION_SHORTFALL:e}"),
                    format!("{running}"),
                );
            }
            run.margin(running - (1.0 - NORMALIZATION_SHORTFALL));
        }
    }
    Ok(run.report(ClaimId::Normalization, grid))
}

fn suite_mean_identity(overrides: &GridOverrides) -> Result<VerificationReport> {
    let ks = resolve_k_range(overrides, 1..=6, 1..=8)?;
    let grid = format!(
        "k in {}..={}; lambda in {CANONICAL_LAMBDAS:?}; first moment of the recurrence table \
         truncated at x = ceil(mu) + 40*ceil(sqrt(mu)+1) vs lambda*k(k+1)/2, \
         absolute tolerance {MEAN_TOLERANCE:e}; deterministic",
        ks.start(),
        ks.end()
    );
    let mut run = SuiteRun::new();
    for k in ks {
        for lambda in CANONICAL_LAMBDAS {
            let params = OrderKParams::new(k, lambda)?;
            let table = pmf_table_recurrence(&params, truncation(&params));
            let moment: f64 = table
                .values()
                .iter()
                .enumerate()
                .map(|(x, &v)| x as f64 * v)
                .sum();
            let deviation = (moment - params.mean()).abs();
            if deviation > MEAN_TOLERANCE {
                run.fail(
                    format!("k={k}, lambda={lambda}"),
                    format!("|moment - {}| <= {MEAN_TOLERANCE:e}", params.mean()),
                    format!("moment {moment}"),
                );
            }
            run.margin(MEAN_TOLERANCE - deviation);
        }
    }
    Ok(run.report(ClaimId::MeanIdentity, grid))
}

fn suite_oracle_equivalence(overrides: &GridOverrides) -> Result<VerificationReport> {
    const X_MAX: u64 = 30;
    const COEFF_K_MAX: u32 = 4;
    const COEFF_X_MAX: u64 = 12;
    let ks = resolve_k_range(overrides, 1..=6, 1..=6)?;
    let grid = format!(
        "k in {}..={}; lambda in {CANONICAL_LAMBDAS:?}; x in 0..={X_MAX}; \
         recurrence vs enumeration rel < {RECURRENCE_REL_TOL:e}, polynomial vs enumeration \
         rel < {POLYNOMIAL_REL_TOL:e}; exact coefficient identity for k <= {COEFF_K_MAX}, \
         x <= {COEFF_X_MAX}; deterministic",
        ks.start(),
        ks.end()
    );
    let mut run = SuiteRun::new();
    for k in ks {
        let poly = poly_coeffs_table(k, X_MAX)?;
        let enumerated: Vec<_> = (0..=X_MAX).map(|x| enumeration_coeffs(k, x)).collect();

        for lambda in CANONICAL_LAMBDAS {
            let params = OrderKParams::new(k, lambda)?;
            let norm = params.norm_factor();
            let recurrence = pmf_table_recurrence(&params, X_MAX);
            for x in 0..=X_MAX {
                let oracle =
                    norm * crate::pmf::enumeration::eval_coeffs(&enumerated[x as usize], lambda);
                let rec = recurrence.value(x).unwrap();
                let rec_rel = (rec - oracle).abs() / oracle;
                if rec_rel >= RECURRENCE_REL_TOL {
                    run.fail(
                        format!("k={k}, lambda={lambda}, x={x}"),
                        format!("recurrence rel err < {RECURRENCE_REL_TOL:e}"),
                        format!("{rec_rel:e} (recurrence {rec}, enumeration {oracle})"),
                    );
                }
                run.margin(RECURRENCE_REL_TOL - rec_rel);

                let poly_val = norm * poly[x as usize].eval_f64(lambda);
                let poly_rel = (poly_val - oracle).abs() / oracle;
                if poly_rel >= POLYNOMIAL_REL_TOL {
                    run.fail(
                        format!("k={k}, lambda={lambda}, x={x}"),
                        format!("polynomial rel err < {POLYNOMIAL_REL_TOL:e}"),
                        format!("{poly_rel:e} (polynomial {poly_val}, enumeration {oracle})"),
                    );
                }
                run.margin(POLYNOMIAL_REL_TOL - poly_rel);
            }
        }

        if k <= COEFF_K_MAX {
            for x in 0..=COEFF_X_MAX {
                if &enumerated[x as usize] != poly[x as usize].coeffs() {
                    run.fail(
                        format!("k={k}, x={x}"),
                        "coefficient recurrence equals enumeration exactly".to_string(),
                        format!(
                            "recurrence {:?} vs enumeration {:?}",
                            poly[x as usize].coeffs(),
                            enumerated[x as usize]
                        ),
                    );
                }
            }
        }
    }
    Ok(run.report(ClaimId::OracleEquivalence, grid))
}
