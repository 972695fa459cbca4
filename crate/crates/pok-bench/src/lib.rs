//! Shared fixtures for the criterion benches.

use pok_core::{OrderKParams, RationalLambda};

/// Desk-scale parameter pairs covering small and moderate orders.
pub fn float_params() -> Vec<OrderKParams> {
    [(2, 0.8), (4, 0.8), (6, 3.0)]
        .into_iter()
        .map(|(k, lambda)| OrderKParams::new(k, lambda).unwrap())
        .collect()
}

/// Rational rates for the exact-path benches.
pub fn exact_rates() -> Vec<(u32, RationalLambda)> {
    vec![
        (2, RationalLambda::new(73, 100).unwrap()),
        (3, RationalLambda::new(3, 4).unwrap()),
        (5, RationalLambda::from_integer(2).unwrap()),
    ]
}
