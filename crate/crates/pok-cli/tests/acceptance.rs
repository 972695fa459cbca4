//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line. Run with `cargo test -p pok-cli --test acceptance`
//! (add `-- --nocapture` to see the lines on success).

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;
use pok_core::{find_modes_exact, pmf_exact, run_suite, ClaimId, GridOverrides, RationalLambda};

fn pok(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pok"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn passed_suite(claim: ClaimId) -> pok_core::VerificationReport {
    let report = run_suite(claim, &GridOverrides::default()).expect("suite runs");
    assert!(
        report.passed,
        "criterion suite {claim} failed: {:?}",
        report.failures
    );
    report
}

#[test]
fn criterion_1_threshold_reproduction() {
    let start = Instant::now();
    let out = pok(&[
        "scan", "--k", "2", "--min", "0.01", "--max", "0.99", "--step", "0.01", "--format", "json",
    ]);
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0));

    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json");
    let transitions = doc["transitions"].as_array().expect("transitions");
    assert_eq!(
        transitions.len(),
        1,
        "exactly one transition: {transitions:?}"
    );
    let t = &transitions[0];
    let lambda_star = t["lambda_star"].as_f64().unwrap();
    let expected = -1.0 + 3f64.sqrt();
    assert!(
        (lambda_star - expected).abs() < 1e-8,
        "lambda* = {lambda_star}, expected {expected}"
    );
    assert_eq!(t["modes_below"], serde_json::json!([0]));
    assert_eq!(t["modes_above"], serde_json::json!([2]));
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");

    println!("criterion 1 (threshold reproduction, lambda* = {lambda_star}, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_exact_bracketing() {
    let below = RationalLambda::new(73, 100).unwrap();
    let p2_below = pmf_exact(2, &below, 2).unwrap();
    assert_eq!(p2_below, ratio(19929, 20000));
    assert!(p2_below < BigRational::one());
    let result = find_modes_exact(2, &below).unwrap();
    assert!(result.certified);
    assert_eq!(result.modes, vec![0], "unique mode 0 at 73/100");
    assert_eq!(result.tie_tolerance, 0.0);

    let above = RationalLambda::new(74, 100).unwrap();
    let p2_above = pmf_exact(2, &above, 2).unwrap();
    assert_eq!(p2_above, ratio(5069, 5000));
    assert!(p2_above > BigRational::one());
    let result = find_modes_exact(2, &above).unwrap();
    assert!(result.certified);
    assert_eq!(result.modes, vec![2], "unique mode 2 at 74/100");

    println!("criterion 2 (exact bracketing at 73/100 and 74/100): PASS");
}

#[test]
fn criterion_3_mode_bound_containment() {
    let start = Instant::now();
    let report = passed_suite(ClaimId::Eq12Bounds);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 3 (mode bound containment, worst margin {}, {elapsed:?}): PASS",
        report.worst_margin
    );
}

#[test]
fn criterion_4_integer_rate_formula() {
    let report = passed_suite(ClaimId::Eq13IntegerLambda);
    println!(
        "criterion 4 (integer-rate mode formula, worst margin {:e}): PASS",
        report.worst_margin
    );
}

#[test]
fn criterion_5_zero_mode_region() {
    let report = passed_suite(ClaimId::Prop21);
    println!(
        "criterion 5 (zero-mode region, worst margin {:e}): PASS",
        report.worst_margin
    );
}

#[test]
fn criterion_6_oracle_equivalence() {
    let report = passed_suite(ClaimId::OracleEquivalence);
    println!(
        "criterion 6 (engine oracle equivalence, worst margin {:e}): PASS",
        report.worst_margin
    );
}

#[test]
fn criterion_7_distribution_sanity() {
    let normalization = passed_suite(ClaimId::Normalization);
    let mean = passed_suite(ClaimId::MeanIdentity);
    println!(
        "criterion 7 (normalization margin {:e}, mean margin {:e}): PASS",
        normalization.worst_margin, mean.worst_margin
    );
}

#[test]
fn criterion_8_proof_inequalities() {
    let report = passed_suite(ClaimId::ProofInequalities);
    println!(
        "criterion 8 (strict pmf inequalities, worst margin {:e}): PASS",
        report.worst_margin
    );
}

#[test]
fn criterion_9_verify_all_stable() {
    let first = pok(&["verify", "all", "--format", "json"]);
    assert_eq!(first.status.code(), Some(0), "verify all exits 0");
    let second = pok(&["verify", "all", "--format", "json"]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(
        first.stdout, second.stdout,
        "verify all JSON is byte-stable across runs"
    );

    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).expect("json");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 8);

    println!("criterion 9 (verify all exits 0, byte-stable JSON): PASS");
}
