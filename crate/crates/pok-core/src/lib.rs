//! Poisson distribution of order `k`.
//!
//! For an order `k >= 1` and a rate `lambda > 0`, the distribution is the law
//! of `S = N_1 + 2*N_2 + ... + k*N_k` with `N_1..N_k` i.i.d. Poisson(lambda).
//! Its pmf is
//!
//! ```text
//! f(x) = e^{-k*lambda} * sum  lambda^(x_1+...+x_k) / (x_1! ... x_k!)
//! ```
//!
//! summed over all k-tuples of non-negative integers with
//! `x_1 + 2*x_2 + ... + k*x_k = x`. At `k = 1` this is the classical Poisson
//! distribution.
//!
//! The crate provides:
//!
//! * three mutually checking pmf engines ([`pmf`]): direct tuple enumeration
//!   (the ground truth), an `O(k * x_max)` convolution recurrence (the default),
//!   and an exact rational polynomial representation `f(x) = e^{-k*lambda} * P_x(lambda)`;
//! * certified mode search with a tail-mass termination proof, closed-form
//!   mode bounds, and exact tie detection at rational rates ([`modes`]);
//! * rate scans that locate and bisect mode-set transitions ([`modes::scan`]);
//! * deterministic verification suites that re-check the distribution's
//!   structural claims and emit machine-readable reports ([`verify`]).

pub mod error;
pub mod modes;
pub mod params;
pub mod pmf;
pub mod verify;

pub use error::{Error, Result};
pub use modes::scan::{threshold_scan, ThresholdReport, Transition, TRANSITION_BRACKET_WIDTH};
pub use modes::{
    find_modes, find_modes_exact, integer_lambda_mode, mode_bounds, order2_mode_set,
    zero_mode_threshold, ModeBounds, ModeResult, Order2Lambda, Order2ModeSet,
    DEFAULT_TIE_TOLERANCE,
};
pub use params::{OrderKParams, RationalLambda};
pub use pmf::{
    enumeration_coeffs, for_each_tuple, pmf_enumerate, pmf_enumerate_with_cap, pmf_exact,
    pmf_table, pmf_table_enumeration, pmf_table_polynomial, pmf_table_recurrence, poly_coeffs,
    poly_coeffs_table, Engine, PmfTable, PolyCoeffs, DEFAULT_ENUMERATION_CAP,
};
pub use verify::{run_all, run_suite, ClaimId, Failure, GridOverrides, VerificationReport};
