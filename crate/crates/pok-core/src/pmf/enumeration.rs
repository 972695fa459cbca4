//! Ground-truth engine: direct summation over the defining k-tuples.
//!
//! `f(x) = e^{-k*lambda} * sum lambda^(x_1+...+x_k) / (x_1! ... x_k!)` over
//! all k-tuples of non-negative integers with `x_1 + 2*x_2 + ... + k*x_k = x`.
//! The factorial reciprocals are accumulated as exact rationals grouped by
//! the total count `m = x_1 + ... + x_k`; the rate powers enter only at the
//! final floating-point evaluation. Cost grows with the number of
//! partitions of `x` into parts of size at most `k`, so calls are refused
//! above a cap.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::params::OrderKParams;
use crate::pmf::{Engine, PmfTable};

/// Largest `x` the enumeration engine accepts by default. Chosen so a call
/// stays interactive: at `x = 60` the tuple count is in the hundreds of
/// thousands.
pub const DEFAULT_ENUMERATION_CAP: u64 = 60;

/// Visits every k-tuple `(x_1..x_k)` of non-negative integers with
/// `x_1 + 2*x_2 + ... + k*x_k = x`.
///
/// Tuples are passed in sparse form: slices of `(part_size, multiplicity)`
/// pairs with multiplicity >= 1, part sizes strictly decreasing. Part sizes
/// that do not appear have multiplicity zero (they contribute a factor
/// `0! = 1` and add nothing to the total count), so the sparse form loses
/// no information. The all-zero tuple for `x = 0` is the empty slice.
pub fn for_each_tuple<F: FnMut(&[(u64, u64)])>(k: u32, x: u64, mut visit: F) {
    if x == 0 {
        visit(&[]);
        return;
    }
    let top = u64::from(k).min(x);
    let mut parts: Vec<(u64, u64)> = Vec::new();
    descend(top, x, &mut parts, &mut visit);
}

fn descend<F: FnMut(&[(u64, u64)])>(
    part: u64,
    remaining: u64,
    parts: &mut Vec<(u64, u64)>,
    visit: &mut F,
) {
    if part == 1 {
        if remaining > 0 {
            parts.push((1, remaining));
            visit(parts);
            parts.pop();
        } else {
            visit(parts);
        }
        return;
    }
    for multiplicity in 0..=remaining / part {
        if multiplicity > 0 {
            parts.push((part, multiplicity));
            descend(part - 1, remaining - part * multiplicity, parts, visit);
            parts.pop();
        } else {
            descend(part - 1, remaining, parts, visit);
        }
    }
}

/// Exact coefficients `{m -> c_{x,m}}` of the scaled polynomial `P_x`,
/// computed straight from the defining sum: `c_{x,m}` adds `1/(x_1!...x_k!)`
/// for every tuple whose total count is `m`.
pub fn enumeration_coeffs(k: u32, x: u64) -> BTreeMap<u64, BigRational> {
    let mut factorials: Vec<BigInt> = Vec::with_capacity(x as usize + 1);
    factorials.push(BigInt::one());
    for i in 1..=x {
        let next = factorials.last().unwrap() * BigInt::from(i);
        factorials.push(next);
    }

    let mut coeffs: BTreeMap<u64, BigRational> = BTreeMap::new();
    for_each_tuple(k, x, |parts| {
        let mut count = 0u64;
        let mut denom = BigInt::one();
        for &(_, multiplicity) in parts {
            count += multiplicity;
            denom *= &factorials[multiplicity as usize];
        }
        let term = BigRational::new(BigInt::one(), denom);
        coeffs
            .entry(count)
            .and_modify(|c| *c += &term)
            .or_insert(term);
    });
    coeffs
}

pub(crate) fn eval_coeffs(coeffs: &BTreeMap<u64, BigRational>, lambda: f64) -> f64 {
    let mut power = 1.0;
    let mut degree = 0u64;
    let mut sum = 0.0;
    for (&m, c) in coeffs {
        while degree < m {
            power *= lambda;
            degree += 1;
        }
        sum += c.to_f64().unwrap_or(f64::NAN) * power;
    }
    sum
}

/// `f(x)` by direct enumeration under the default cap.
pub fn pmf_enumerate(params: &OrderKParams, x: u64) -> Result<f64> {
    pmf_enumerate_with_cap(params, x, DEFAULT_ENUMERATION_CAP)
}

/// `f(x)` by direct enumeration, refusing `x > cap`.
pub fn pmf_enumerate_with_cap(params: &OrderKParams, x: u64, cap: u64) -> Result<f64> {
    if x > cap {
        return Err(Error::EnumerationCapExceeded { x, cap });
    }
    let coeffs = enumeration_coeffs(params.k(), x);
    Ok(params.norm_factor() * eval_coeffs(&coeffs, params.lambda()))
}

/// Full table `f(0..=x_max)` by enumeration.
pub fn pmf_table_enumeration(params: &OrderKParams, x_max: u64, cap: u64) -> Result<PmfTable> {
    let values = (0..=x_max)
        .map(|x| pmf_enumerate_with_cap(params, x, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(PmfTable::new(*params, Engine::Enumeration, values))
}
