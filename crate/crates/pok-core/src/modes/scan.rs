//! Rate scans that locate mode-set transitions.
//!
//! The certified mode set is a step function of the rate. A scan evaluates
//! it on a grid, then bisects every bracket where consecutive grid points
//! disagree. The mode set is discrete, so bisection compares the midpoint's
//! set against the left endpoint's set rather than a sign; a tie set hit at
//! a probed rate simply becomes the right endpoint of its bracket and shows
//! up as its own degenerate transition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modes::{find_modes, DEFAULT_TIE_TOLERANCE};
use crate::params::OrderKParams;

/// Width every transition bracket is refined to.
pub const TRANSITION_BRACKET_WIDTH: f64 = 1e-9;

/// One located change of the certified mode set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transition {
    /// Midpoint of the final bracket.
    pub lambda_star: f64,
    /// Final bracket `(lo, hi)`, at most [`TRANSITION_BRACKET_WIDTH`] wide;
    /// the mode set at `lo` is `modes_below`, at `hi` it is `modes_above`.
    pub bracket: (f64, f64),
    pub modes_below: Vec<u64>,
    pub modes_above: Vec<u64>,
}

/// All transitions found on a scanned rate range, ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub k: u32,
    pub scan_range: (f64, f64),
    pub grid_step: f64,
    pub transitions: Vec<Transition>,
}

/// Scans `[lambda_min, lambda_max]` with the given step, brackets every
/// mode-set change, and bisects each bracket to width
/// [`TRANSITION_BRACKET_WIDTH`].
///
/// Every probe is a certified search; a certification failure propagates
/// with the offending rate in the error.
pub fn threshold_scan(
    k: u32,
    lambda_min: f64,
    lambda_max: f64,
    grid_step: f64,
) -> Result<ThresholdReport> {
    if !lambda_min.is_finite() || lambda_min <= 0.0 {
        return Err(Error::InvalidScanGrid(format!(
            "lambda_min must be > 0, got {lambda_min}"
        )));
    }
    if !lambda_max.is_finite() || lambda_max <= lambda_min {
        return Err(Error::InvalidScanGrid(format!(
            "lambda_max must exceed lambda_min, got ({lambda_min}, {lambda_max})"
        )));
    }
    if !grid_step.is_finite() || grid_step <= 0.0 {
        return Err(Error::InvalidScanGrid(format!(
            "grid_step must be > 0, got {grid_step}"
        )));
    }

    let modes_at = |lambda: f64| -> Result<Vec<u64>> {
        let params = OrderKParams::new(k, lambda)?;
        Ok(find_modes(&params, DEFAULT_TIE_TOLERANCE)?.modes)
    };

    // Grid points are recomputed from the index so step rounding does not
    // accumulate.
    let mut grid = Vec::new();
    for i in 0u64.. {
        let lambda = lambda_min + i as f64 * grid_step;
        if lambda > lambda_max + grid_step * 1e-9 {
            break;
        }
        grid.push(lambda);
    }
    if grid.len() < 2 {
        return Err(Error::InvalidScanGrid(format!(
            "step {grid_step} yields fewer than two points in ({lambda_min}, {lambda_max})"
        )));
    }

    let mut transitions = Vec::new();
    let mut prev_lambda = grid[0];
    let mut prev_set = modes_at(prev_lambda)?;
    for &lambda in &grid[1..] {
        let set = modes_at(lambda)?;
        if set != prev_set {
            let below = prev_set.clone();
            let mut above = set.clone();
            let (mut lo, mut hi) = (prev_lambda, lambda);
            while hi - lo > TRANSITION_BRACKET_WIDTH {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let mid_set = modes_at(mid)?;
                if mid_set == below {
                    lo = mid;
                } else {
                    hi = mid;
                    above = mid_set;
                }
            }
            transitions.push(Transition {
                lambda_star: 0.5 * (lo + hi),
                bracket: (lo, hi),
                modes_below: below,
                modes_above: above,
            });
        }
        prev_lambda = lambda;
        prev_set = set;
    }

    Ok(ThresholdReport {
        k,
        scan_range: (lambda_min, lambda_max),
        grid_step,
        transitions,
    })
}
