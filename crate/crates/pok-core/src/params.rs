//! Distribution parameters: the `(k, lambda)` pair and exact rational rates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters of the Poisson distribution of order `k`: the order `k >= 1`
/// and the rate `lambda > 0`. Both invariants are enforced at construction,
/// so downstream code never re-validates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderKParams {
    k: u32,
    lambda: f64,
}

impl OrderKParams {
    pub fn new(k: u32, lambda: f64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidOrder(k));
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::InvalidLambda(lambda));
        }
        Ok(Self { k, lambda })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Sum of the part sizes `1 + 2 + ... + k = k(k+1)/2`.
    pub fn triangular(&self) -> u64 {
        u64::from(self.k) * (u64::from(self.k) + 1) / 2
    }

    /// Mean of the distribution, `lambda * k(k+1)/2`, in closed form.
    pub fn mean(&self) -> f64 {
        self.lambda * f64::from(self.k) * (f64::from(self.k) + 1.0) / 2.0
    }

    /// `floor(mean)`, the right end of the mode bracket.
    pub fn floor_mean(&self) -> u64 {
        self.mean().floor() as u64
    }

    /// The common factor `e^{-k*lambda}` of every pmf value.
    pub(crate) fn norm_factor(&self) -> f64 {
        (-f64::from(self.k) * self.lambda).exp()
    }
}

impl fmt::Display for OrderKParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k = {}, lambda = {}", self.k, self.lambda)
    }
}

/// A strictly positive rational rate, kept in lowest terms.
///
/// At a fixed rate the factor `e^{-k*lambda}` is common to every pmf value,
/// so comparing `f(a)` with `f(b)` reduces to comparing the scaled
/// polynomials `P_a(lambda)` and `P_b(lambda)`. For rational rates those are
/// exact rationals, which makes tie detection free of rounding: distinct
/// values are never merged, and reported ties are real.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLambda(BigRational);

impl RationalLambda {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidRationalLambda(
                "denominator must be nonzero".into(),
            ));
        }
        Self::from_ratio(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        ))
    }

    pub fn from_integer(n: u64) -> Result<Self> {
        Self::from_ratio(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(ratio: BigRational) -> Result<Self> {
        if !ratio.is_positive() {
            return Err(Error::InvalidRationalLambda(format!(
                "value must be > 0, got {ratio}"
            )));
        }
        Ok(Self(ratio))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Nearest double, used for tail-mass certificates and display.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromStr for RationalLambda {
    type Err = Error;

    /// Parses `"p/q"` or a bare integer `"p"`. Decimal or scientific
    /// notation is rejected: exactness must be asked for explicitly.
    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim())
                .map_err(|e| Error::InvalidRationalLambda(format!("{t:?}: {e}")))
        };
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        if denom.is_zero() {
            return Err(Error::InvalidRationalLambda(format!(
                "{s:?}: denominator must be nonzero"
            )));
        }
        Self::from_ratio(BigRational::new(numer, denom))
    }
}

impl fmt::Display for RationalLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
