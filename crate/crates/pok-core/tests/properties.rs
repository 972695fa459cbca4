//! Property-based invariants.

use proptest::prelude::*;

use pok_core::{
    enumeration_coeffs, find_modes, find_modes_exact, mode_bounds, order2_mode_set, pmf_enumerate,
    pmf_table_recurrence, poly_coeffs, Order2Lambda, OrderKParams, RationalLambda,
    DEFAULT_TIE_TOLERANCE,
};

fn arb_params() -> impl Strategy<Value = OrderKParams> {
    (1u32..=6, 0.02f64..5.0).prop_map(|(k, lambda)| OrderKParams::new(k, lambda).unwrap())
}

proptest! {
    #[test]
    fn recurrence_agrees_with_enumeration(
        k in 1u32..=5,
        lambda in 0.02f64..4.0,
        x_max in 0u64..=20,
    ) {
        let params = OrderKParams::new(k, lambda).unwrap();
        let table = pmf_table_recurrence(&params, x_max);
        for x in 0..=x_max {
            let oracle = pmf_enumerate(&params, x).unwrap();
            let got = table.value(x).unwrap();
            prop_assert!(
                (got - oracle).abs() / oracle < 1e-12,
                "x={x}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn coefficients_equal_enumeration(k in 1u32..=4, x in 0u64..=12) {
        let recurrence = poly_coeffs(k, x).unwrap();
        prop_assert_eq!(recurrence.coeffs(), &enumeration_coeffs(k, x));
    }

    #[test]
    fn certified_search_invariants(params in arb_params()) {
        let result = find_modes(&params, DEFAULT_TIE_TOLERANCE).unwrap();
        prop_assert!(result.certified);
        prop_assert!(!result.modes.is_empty());
        prop_assert!(result.search_bound >= params.floor_mean());

        let bounds = mode_bounds(&params);
        for &m in &result.modes {
            prop_assert!(bounds.contains(m), "mode {m} outside {bounds:?}");
        }

        // the reported maximum is the maximum of the scanned table, and
        // every listed mode is within tolerance of it
        let table = pmf_table_recurrence(&params, result.search_bound);
        let max = table.values().iter().copied().fold(0.0, f64::max);
        prop_assert!((result.max_prob - max).abs() <= max * 1e-15);
        for &m in &result.modes {
            let v = table.value(m).unwrap();
            prop_assert!(v >= max * (1.0 - DEFAULT_TIE_TOLERANCE));
        }
    }

    #[test]
    fn exact_classifier_agrees_with_exact_search(
        (denom, numer) in (2i64..=400).prop_flat_map(|q| (Just(q), 1..q)),
    ) {
        let lambda = RationalLambda::new(numer, denom).unwrap();
        let expected = order2_mode_set(&Order2Lambda::Rational(lambda.clone())).unwrap();
        let result = find_modes_exact(2, &lambda).unwrap();
        prop_assert_eq!(result.modes.as_slice(), expected.modes());
        prop_assert_eq!(result.tie_tolerance, 0.0);
        prop_assert!(result.certified);
    }

    #[test]
    fn table_json_round_trips_bit_for_bit(params in arb_params(), x_max in 0u64..=30) {
        let table = pmf_table_recurrence(&params, x_max);
        let json = serde_json::to_string(&table).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();

        let lambda = parsed["params"]["lambda"].as_f64().unwrap();
        prop_assert_eq!(lambda.to_bits(), params.lambda().to_bits());
        for (x, &v) in table.values().iter().enumerate() {
            let back = parsed["values"][x].as_f64().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits(), "x={}", x);
        }
    }

    #[test]
    fn partial_sums_stay_in_the_unit_interval(params in arb_params()) {
        let mu = params.mean();
        let x_max = mu.ceil() as u64 + 40 * (mu.sqrt() + 1.0).ceil() as u64;
        let table = pmf_table_recurrence(&params, x_max);
        let mut running = 0.0;
        for (x, &v) in table.values().iter().enumerate() {
            prop_assert!((0.0..=1.0).contains(&v), "x={x}: {v}");
            running += v;
            prop_assert!(running <= 1.0 + 1e-9, "x={x}: partial sum {running}");
        }
        prop_assert!(running > 1.0 - 1e-9);
    }
}
