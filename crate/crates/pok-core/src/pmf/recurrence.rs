//! Default engine: the convolution recurrence.
//!
//! The distribution is the law of `S = sum_{j=1..k} j*N_j` with `N_j` i.i.d.
//! Poisson(lambda). Differentiating its probability generating function
//! `exp(lambda * sum_j (z^j - 1))` yields
//!
//! ```text
//! x * f(x) = lambda * sum_{j=1}^{min(k,x)} j * f(x - j),    f(0) = e^{-k*lambda}
//! ```
//!
//! Every term is non-negative, so the recursion has no cancellation; the
//! whole table costs `O(k * x_max)` arithmetic operations.

use crate::params::OrderKParams;
use crate::pmf::{Engine, PmfTable};

/// Full table `f(0..=x_max)` by the convolution recurrence.
pub fn pmf_table_recurrence(params: &OrderKParams, x_max: u64) -> PmfTable {
    let k = u64::from(params.k());
    let lambda = params.lambda();
    let mut values = Vec::with_capacity(x_max as usize + 1);
    values.push(params.norm_factor());
    for x in 1..=x_max {
        let mut sum = 0.0;
        for j in 1..=k.min(x) {
            sum += j as f64 * values[(x - j) as usize];
        }
        values.push(lambda * sum / x as f64);
    }
    PmfTable::new(*params, Engine::Recurrence, values)
}
