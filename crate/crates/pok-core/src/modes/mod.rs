//! Certified mode finding and mode-set classification.
//!
//! The mode `m` is the support point (or tied points) maximizing the pmf.
//! The search scans `x = 0, 1, 2, ...` keeping the running maximum `M` and
//! the cumulative mass `C`, and stops at the first `x >= floor(mean)` with
//! `1 - C < M`: past that point the entire unexplored tail carries less mass
//! than the best single point already seen, so no unexplored `x` can be a
//! mode. The `x >= floor(mean)` floor makes the scan cover the whole
//! bracket the mode is known to lie in, so that bracket is exercised by the
//! search rather than assumed by it.
//!
//! Two paths exist. The float path compares probabilities with a relative
//! tie tolerance (default `1e-12`). The exact path, available at rational
//! rates, compares the scaled values `P_x(lambda)` as exact rationals: the
//! common factor `e^{-k*lambda}` cancels, so ties are detected if and only
//! if they truly occur. Only the termination certificate uses floating
//! point on either path.

pub mod scan;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{OrderKParams, RationalLambda};

/// Relative tie tolerance of the float path. The exact path uses zero.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-12;

/// Closed-form bracket the mode(s) must lie in:
/// `max(0, floor(mu) - k(k+1)/2 + 1 - d) <= m <= floor(mu)` where
/// `mu = lambda*k(k+1)/2` and `d = 1` iff `k = 1`. The raw lower bound can
/// be negative for small rates; it is clamped at 0 because the support
/// starts there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModeBounds {
    pub lower: u64,
    pub upper: u64,
}

impl ModeBounds {
    pub fn contains(&self, x: u64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Bracket for the mode(s) of the distribution.
pub fn mode_bounds(params: &OrderKParams) -> ModeBounds {
    let floor_mu = params.floor_mean();
    let delta = u64::from(params.k() == 1);
    let raw_lower = floor_mu as i128 - params.triangular() as i128 + 1 - delta as i128;
    ModeBounds {
        lower: raw_lower.max(0) as u64,
        upper: floor_mu,
    }
}

/// Result of a certified mode search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeResult {
    pub params: OrderKParams,
    /// All maximizers, ascending; points whose probability lies within
    /// `tie_tolerance` (relative) of the maximum.
    pub modes: Vec<u64>,
    pub max_prob: f64,
    /// Largest support point examined; at least `floor(mean)`.
    pub search_bound: u64,
    /// Relative tolerance used for tie detection; 0 on the exact path.
    pub tie_tolerance: f64,
    /// Whether the tail-mass termination rule held: the mass beyond
    /// `search_bound` is strictly below `max_prob`, so no unexplored point
    /// can be a mode.
    pub certified: bool,
}

fn hard_cap(params: &OrderKParams) -> u64 {
    let k = u64::from(params.k());
    params.floor_mean() + 10 * k * (k + 1) + 100
}

/// Incremental evaluator for `f(x)` via the convolution recurrence, keeping
/// only the last `k` values.
struct RollingPmf {
    k: u64,
    lambda: f64,
    norm: f64,
    ring: Vec<f64>,
}

impl RollingPmf {
    fn new(params: &OrderKParams) -> Self {
        Self {
            k: u64::from(params.k()),
            lambda: params.lambda(),
            norm: params.norm_factor(),
            ring: vec![0.0; params.k() as usize],
        }
    }

    fn next(&mut self, x: u64) -> f64 {
        let value = if x == 0 {
            self.norm
        } else {
            let mut sum = 0.0;
            for j in 1..=self.k.min(x) {
                sum += j as f64 * self.ring[((x - j) % self.k) as usize];
            }
            self.lambda * sum / x as f64
        };
        self.ring[(x % self.k) as usize] = value;
        value
    }
}

/// Certified mode search on the float path.
///
/// Ties are detected with the given relative tolerance: the result lists
/// every `x` with `f(x) >= max_prob * (1 - tie_tolerance)`. Fails with
/// [`Error::CertificationFailed`] if the tail-mass rule has not fired by
/// `floor(mean) + 10*k*(k+1) + 100`.
pub fn find_modes(params: &OrderKParams, tie_tolerance: f64) -> Result<ModeResult> {
    if !tie_tolerance.is_finite() || tie_tolerance < 0.0 {
        return Err(Error::InvalidTieTolerance(tie_tolerance));
    }
    let floor_mu = params.floor_mean();
    let cap = hard_cap(params);
    let mut pmf = RollingPmf::new(params);
    let mut best = f64::NEG_INFINITY;
    let mut candidates: Vec<(u64, f64)> = Vec::new();
    let mut cumulative = 0.0;

    for x in 0..=cap {
        let f = pmf.next(x);
        cumulative += f;
        if f > best {
            best = f;
            candidates.retain(|&(_, v)| v >= best * (1.0 - tie_tolerance));
            candidates.push((x, f));
        } else if f >= best * (1.0 - tie_tolerance) {
            candidates.push((x, f));
        }
        if x >= floor_mu && 1.0 - cumulative < best {
            return Ok(ModeResult {
                params: *params,
                modes: candidates.iter().map(|&(m, _)| m).collect(),
                max_prob: best,
                search_bound: x,
                tie_tolerance,
                certified: true,
            });
        }
    }
    Err(Error::CertificationFailed {
        k: params.k(),
        lambda: params.lambda(),
        search_cap: cap,
    })
}

/// Certified mode search on the exact path.
///
/// Probabilities are compared through the scaled rationals `P_x(lambda)`,
/// so the returned ties are exact: distinct values are never merged. Only
/// the termination certificate is evaluated in floating point.
pub fn find_modes_exact(k: u32, lambda: &RationalLambda) -> Result<ModeResult> {
    let params = OrderKParams::new(k, lambda.to_f64())?;
    let floor_mu = params.floor_mean();
    let cap = hard_cap(&params);
    let ratio = lambda.as_ratio();
    let k_wide = u64::from(k);

    let mut pmf = RollingPmf::new(&params);
    let mut ring: Vec<BigRational> = vec![BigRational::zero(); k as usize];
    let mut best = BigRational::zero();
    let mut best_float = 0.0;
    let mut modes: Vec<u64> = Vec::new();
    let mut cumulative = 0.0;

    for x in 0..=cap {
        let scaled = if x == 0 {
            BigRational::one()
        } else {
            let mut sum = BigRational::zero();
            for j in 1..=k_wide.min(x) {
                sum += &ring[((x - j) % k_wide) as usize] * BigRational::from_integer(j.into());
            }
            sum * ratio / BigRational::from_integer(x.into())
        };
        let f = pmf.next(x);
        cumulative += f;

        match scaled.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = scaled.clone();
                best_float = params.norm_factor() * best.to_f64().unwrap_or(f64::NAN);
                modes.clear();
                modes.push(x);
            }
            std::cmp::Ordering::Equal => modes.push(x),
            std::cmp::Ordering::Less => {}
        }
        ring[(x % k_wide) as usize] = scaled;

        if x >= floor_mu && 1.0 - cumulative < best_float {
            return Ok(ModeResult {
                params,
                modes,
                max_prob: best_float,
                search_bound: x,
                tie_tolerance: 0.0,
                certified: true,
            });
        }
    }
    Err(Error::CertificationFailed {
        k,
        lambda: params.lambda(),
        search_cap: cap,
    })
}

/// Closed-form mode for integer rates and orders 2 through 5:
/// `lambda * k(k+1)/2 - floor(k/2)`. The formula is asserted only on that
/// range, so other inputs are rejected.
pub fn integer_lambda_mode(k: u32, lambda: u32) -> Result<u64> {
    if !(2..=5).contains(&k) {
        return Err(Error::OrderOutOfRange { k, min: 2, max: 5 });
    }
    if lambda == 0 {
        return Err(Error::InvalidLambda(0.0));
    }
    let triangular = u64::from(k) * u64::from(k + 1) / 2;
    Ok(u64::from(lambda) * triangular - u64::from(k / 2))
}

/// Largest rate below which the unique mode is provably 0: `2 / (k(k+1))`.
///
/// For `0 < lambda < zero_mode_threshold(k)` the mean is below 1, so
/// `floor(mean) = 0` squeezes the mode bracket to `{0}`. The bound is sharp
/// for `k = 1` but not necessary for `k >= 2`: at `k = 2` the mode stays 0
/// up to `sqrt(3) - 1`, well past `1/3`.
pub fn zero_mode_threshold(k: u32) -> f64 {
    assert!(k >= 1, "k must be >= 1");
    2.0 / (f64::from(k) * (f64::from(k) + 1.0))
}

/// Rate input for the order-2 classifier.
#[derive(Debug, Clone)]
pub enum Order2Lambda {
    /// Classified by the floating-point sign of `lambda + lambda^2/2 - 1`.
    Float(f64),
    /// Classified exactly; a tie is reported only if it truly occurs
    /// (never, for rationals: the tie point is irrational).
    Rational(RationalLambda),
    /// The exact tie point `sqrt(3) - 1`, where `f(0) = f(2)`.
    TiePoint,
}

/// Mode set of the order-2 distribution for rates in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order2ModeSet {
    Zero,
    ZeroAndTwo,
    Two,
}

impl Order2ModeSet {
    pub fn modes(&self) -> &'static [u64] {
        match self {
            Order2ModeSet::Zero => &[0],
            Order2ModeSet::ZeroAndTwo => &[0, 2],
            Order2ModeSet::Two => &[2],
        }
    }
}

/// Mode set for `k = 2` and `0 < lambda < 1`.
///
/// On that range `f(1)` is dominated (`f(0) > f(1)` for `lambda < 1` and
/// `f(1) < f(2)` always), so the mode set is decided by comparing `f(2)`
/// with `f(0)`, i.e. `lambda + lambda^2/2` with 1: below gives `{0}`, equal
/// `{0, 2}`, above `{2}`. The crossing happens at `lambda = sqrt(3) - 1`.
pub fn order2_mode_set(lambda: &Order2Lambda) -> Result<Order2ModeSet> {
    match lambda {
        Order2Lambda::Float(l) => {
            if !l.is_finite() || *l <= 0.0 || *l >= 1.0 {
                return Err(Error::LambdaOutOfRange {
                    lambda: *l,
                    min: 0.0,
                    max: 1.0,
                });
            }
            let scaled = l + l * l / 2.0;
            Ok(match scaled.partial_cmp(&1.0).expect("finite") {
                std::cmp::Ordering::Less => Order2ModeSet::Zero,
                std::cmp::Ordering::Equal => Order2ModeSet::ZeroAndTwo,
                std::cmp::Ordering::Greater => Order2ModeSet::Two,
            })
        }
        Order2Lambda::Rational(r) => {
            let ratio = r.as_ratio();
            if ratio >= &BigRational::one() {
                return Err(Error::LambdaOutOfRange {
                    lambda: r.to_f64(),
                    min: 0.0,
                    max: 1.0,
                });
            }
            let scaled = ratio + ratio * ratio / BigRational::from_integer(2.into());
            Ok(match scaled.cmp(&BigRational::one()) {
                std::cmp::Ordering::Less => Order2ModeSet::Zero,
                std::cmp::Ordering::Equal => Order2ModeSet::ZeroAndTwo,
                std::cmp::Ordering::Greater => Order2ModeSet::Two,
            })
        }
        Order2Lambda::TiePoint => Ok(Order2ModeSet::ZeroAndTwo),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: u32, lambda: f64) -> OrderKParams {
        OrderKParams::new(k, lambda).unwrap()
    }

    fn rational(n: i64, d: i64) -> RationalLambda {
        RationalLambda::new(n, d).unwrap()
    }

    #[test]
    fn bounds_examples() {
        let b = mode_bounds(&params(1, 3.5));
        assert_eq!((b.lower, b.upper), (2, 3));

        let b = mode_bounds(&params(2, 0.5));
        assert_eq!((b.lower, b.upper), (0, 1));

        let b = mode_bounds(&params(5, 1.0));
        assert_eq!((b.lower, b.upper), (1, 15));
    }

    #[test]
    fn bounds_lower_clamps_at_zero() {
        let b = mode_bounds(&params(4, 0.01));
        assert_eq!(b.lower, 0);
        assert_eq!(b.upper, 0);
        assert!(b.contains(0));
    }

    #[test]
    fn float_search_matches_known_mode_sets() {
        assert_eq!(find_modes(&params(2, 0.5), 1e-12).unwrap().modes, vec![0]);
        assert_eq!(find_modes(&params(2, 0.9), 1e-12).unwrap().modes, vec![2]);
        assert_eq!(find_modes(&params(3, 0.1), 1e-12).unwrap().modes, vec![0]);
    }

    #[test]
    fn float_search_certifies_with_mean_floor_covered() {
        let p = params(2, 0.9);
        let r = find_modes(&p, DEFAULT_TIE_TOLERANCE).unwrap();
        assert!(r.certified);
        assert!(r.search_bound >= p.floor_mean());
        assert!(r.max_prob > 0.0 && r.max_prob <= 1.0);
    }

    #[test]
    fn float_search_detects_integer_rate_tie_at_order_one() {
        let r = find_modes(&params(1, 3.0), DEFAULT_TIE_TOLERANCE).unwrap();
        assert_eq!(r.modes, vec![2, 3]);
    }

    #[test]
    fn float_search_rejects_bad_tolerance() {
        assert!(matches!(
            find_modes(&params(2, 0.5), -1.0),
            Err(Error::InvalidTieTolerance(_))
        ));
        assert!(find_modes(&params(2, 0.5), f64::NAN).is_err());
    }

    #[test]
    fn exact_search_integer_rate_ties() {
        let r = find_modes_exact(1, &RationalLambda::from_integer(3).unwrap()).unwrap();
        assert_eq!(r.modes, vec![2, 3]);
        assert_eq!(r.tie_tolerance, 0.0);
        assert!(r.certified);

        let r = find_modes_exact(1, &RationalLambda::from_integer(1).unwrap()).unwrap();
        assert_eq!(r.modes, vec![0, 1]);
    }

    #[test]
    fn exact_search_brackets_the_order_two_transition() {
        // no spurious tie on either side of sqrt(3) - 1
        let r = find_modes_exact(2, &rational(73, 100)).unwrap();
        assert_eq!(r.modes, vec![0]);
        let r = find_modes_exact(2, &rational(74, 100)).unwrap();
        assert_eq!(r.modes, vec![2]);
    }

    #[test]
    fn integer_rate_formula() {
        assert_eq!(integer_lambda_mode(2, 1).unwrap(), 2);
        assert_eq!(integer_lambda_mode(5, 2).unwrap(), 28);
        assert_eq!(integer_lambda_mode(4, 1).unwrap(), 8);
        assert!(matches!(
            integer_lambda_mode(1, 2),
            Err(Error::OrderOutOfRange { .. })
        ));
        assert!(matches!(
            integer_lambda_mode(6, 2),
            Err(Error::OrderOutOfRange { .. })
        ));
        assert!(matches!(
            integer_lambda_mode(3, 0),
            Err(Error::InvalidLambda(_))
        ));
    }

    #[test]
    fn zero_mode_threshold_values() {
        assert_eq!(zero_mode_threshold(1), 1.0);
        assert!((zero_mode_threshold(2) - 1.0 / 3.0).abs() < 1e-16);
        assert!((zero_mode_threshold(3) - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn classifier_agrees_with_search() {
        assert_eq!(
            order2_mode_set(&Order2Lambda::Float(0.5)).unwrap(),
            Order2ModeSet::Zero
        );
        assert_eq!(
            order2_mode_set(&Order2Lambda::Rational(rational(73, 100))).unwrap(),
            Order2ModeSet::Zero
        );
        assert_eq!(
            order2_mode_set(&Order2Lambda::Rational(rational(74, 100))).unwrap(),
            Order2ModeSet::Two
        );
        assert_eq!(
            order2_mode_set(&Order2Lambda::TiePoint).unwrap(),
            Order2ModeSet::ZeroAndTwo
        );
    }

    #[test]
    fn classifier_rejects_out_of_range_rates() {
        assert!(order2_mode_set(&Order2Lambda::Float(1.0)).is_err());
        assert!(order2_mode_set(&Order2Lambda::Float(0.0)).is_err());
        assert!(order2_mode_set(&Order2Lambda::Rational(rational(3, 2))).is_err());
    }

    #[test]
    fn search_fails_loudly_when_the_float_path_underflows() {
        // e^{-k*lambda} underflows to 0 here, so no certificate can fire
        let p = params(8, 200.0);
        assert!(matches!(
            find_modes(&p, DEFAULT_TIE_TOLERANCE),
            Err(Error::CertificationFailed { k: 8, .. })
        ));
    }

    #[test]
    fn results_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<ModeResult>();
        assert_send_sync::<ModeBounds>();
        assert_send_sync::<crate::PmfTable>();
        assert_send_sync::<crate::PolyCoeffs>();
        assert_send_sync::<crate::RationalLambda>();
        assert_send_sync::<crate::ThresholdReport>();
        assert_send_sync::<crate::VerificationReport>();
    }

    #[test]
    fn modes_lie_within_bounds_on_a_spot_grid() {
        for k in 1..=6 {
            for lambda in [0.05, 0.3, 0.9, 1.7, 3.2] {
                let p = params(k, lambda);
                let r = find_modes(&p, DEFAULT_TIE_TOLERANCE).unwrap();
                let b = mode_bounds(&p);
                for &m in &r.modes {
                    assert!(
                        b.contains(m),
                        "k={k} lambda={lambda}: mode {m} outside {b:?}"
                    );
                }
            }
        }
    }
}
