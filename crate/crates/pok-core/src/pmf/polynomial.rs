//! Exact engine: rational coefficients of the scaled polynomials.
//!
//! Factoring the common exponential out of the pmf gives
//! `f(x) = e^{-k*lambda} * P_x(lambda)` where `P_x` has non-negative rational
//! coefficients. The convolution recurrence transported to coefficient space,
//!
//! ```text
//! c_{x,m} = (1/x) * sum_{j=1}^{min(k,x)} j * c_{x-j, m-1},    c_{0,0} = 1,
//! ```
//!
//! produces those coefficients with no rounding anywhere. Exact evaluation
//! at rational rates is what makes mode ties decidable; floating-point
//! evaluation yields the `polynomial` pmf engine.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::params::{OrderKParams, RationalLambda};
use crate::pmf::{Engine, PmfTable};

/// Exact coefficients of `P_x` for one support point.
///
/// Nonzero coefficients occur exactly for degrees `ceil(x/k) <= m <= x`:
/// a tuple with total count `m` reaches `x` only if `m <= x <= k*m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCoeffs {
    x: u64,
    coeffs: BTreeMap<u64, BigRational>,
}

impl PolyCoeffs {
    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, degree: u64) -> Option<&BigRational> {
        self.coeffs.get(&degree)
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `P_x(lambda)` in floating point.
    pub fn eval_f64(&self, lambda: f64) -> f64 {
        let mut power = 1.0;
        let mut degree = 0u64;
        let mut sum = 0.0;
        for (&m, c) in &self.coeffs {
            while degree < m {
                power *= lambda;
                degree += 1;
            }
            sum += c.to_f64().unwrap_or(f64::NAN) * power;
        }
        sum
    }

    /// `P_x(lambda)` as an exact rational.
    pub fn eval_exact(&self, lambda: &RationalLambda) -> BigRational {
        let ratio = lambda.as_ratio();
        let mut power = BigRational::one();
        let mut degree = 0u64;
        let mut sum = BigRational::new(0.into(), 1.into());
        for (&m, c) in &self.coeffs {
            while degree < m {
                power *= ratio;
                degree += 1;
            }
            sum += c * &power;
        }
        sum
    }
}

/// Coefficients of `P_0 .. P_x_max` in one pass of the recurrence.
pub fn poly_coeffs_table(k: u32, x_max: u64) -> Result<Vec<PolyCoeffs>> {
    if k < 1 {
        return Err(Error::InvalidOrder(k));
    }
    let mut rows: Vec<PolyCoeffs> = Vec::with_capacity(x_max as usize + 1);
    rows.push(PolyCoeffs {
        x: 0,
        coeffs: BTreeMap::from([(0, BigRational::one())]),
    });
    for x in 1..=x_max {
        let mut coeffs: BTreeMap<u64, BigRational> = BTreeMap::new();
        for j in 1..=u64::from(k).min(x) {
            let weight = BigInt::from(j);
            for (&m, c) in &rows[(x - j) as usize].coeffs {
                let term = c * &weight;
                coeffs
                    .entry(m + 1)
                    .and_modify(|acc| *acc += &term)
                    .or_insert(term);
            }
        }
        let divisor = BigInt::from(x);
        for c in coeffs.values_mut() {
            *c /= &divisor;
        }
        rows.push(PolyCoeffs { x, coeffs });
    }
    Ok(rows)
}

/// Coefficients of `P_x` alone.
pub fn poly_coeffs(k: u32, x: u64) -> Result<PolyCoeffs> {
    Ok(poly_coeffs_table(k, x)?.pop().expect("table is non-empty"))
}

/// The exact scaled probability `P_x(lambda)` at a rational rate.
///
/// Because `e^{-k*lambda} > 0` is common to every support point, comparing
/// these rationals at equal rate compares the pmf values themselves, with
/// no tolerance involved.
pub fn pmf_exact(k: u32, lambda: &RationalLambda, x: u64) -> Result<BigRational> {
    Ok(poly_coeffs(k, x)?.eval_exact(lambda))
}

/// Full table `f(0..=x_max)` by exact coefficients evaluated in floating
/// point.
pub fn pmf_table_polynomial(params: &OrderKParams, x_max: u64) -> PmfTable {
    let rows = poly_coeffs_table(params.k(), x_max).expect("params are validated");
    let norm = params.norm_factor();
    let values = rows
        .iter()
        .map(|p| norm * p.eval_f64(params.lambda()))
        .collect();
    PmfTable::new(*params, Engine::Polynomial, values)
}
