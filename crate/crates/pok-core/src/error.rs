//! Error type shared by all modules.

use thiserror::Error;

/// Errors from parameter validation, the pmf engines, the mode search, and
/// the verification layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The order `k` must be at least 1.
    #[error("k must be >= 1, got {0}")]
    InvalidOrder(u32),

    /// The rate must be strictly positive and finite.
    #[error("lambda must be > 0, got {0}")]
    InvalidLambda(f64),

    /// A rational rate failed to parse or was not strictly positive.
    #[error("invalid rational lambda: {0}")]
    InvalidRationalLambda(String),

    /// The rate lies outside the domain an operation is defined on.
    #[error("lambda must lie in ({min}, {max}), got {lambda}")]
    LambdaOutOfRange { lambda: f64, min: f64, max: f64 },

    /// The order lies outside the range an operation is defined on.
    #[error("k must lie in {min}..={max}, got {k}")]
    OrderOutOfRange { k: u32, min: u32, max: u32 },

    /// Tuple enumeration refused to run above its configured cost cap.
    #[error("enumeration cap exceeded: x = {x} > cap = {cap}")]
    EnumerationCapExceeded { x: u64, cap: u64 },

    /// The mode search hit its hard cap before the tail-mass certificate
    /// fired; signals a tolerance or parameter pathology.
    #[error(
        "mode search failed to certify for k = {k}, lambda = {lambda} within x <= {search_cap}"
    )]
    CertificationFailed {
        k: u32,
        lambda: f64,
        search_cap: u64,
    },

    /// Tie tolerance must be finite and non-negative.
    #[error("tie tolerance must be finite and >= 0, got {0}")]
    InvalidTieTolerance(f64),

    /// Threshold scan called with an unusable grid.
    #[error("invalid scan grid: {0}")]
    InvalidScanGrid(String),

    /// Engine name not recognized.
    #[error("unknown engine {0:?} (expected enumeration, recurrence, or polynomial)")]
    UnknownEngine(String),

    /// Verification suite name not recognized.
    #[error("unknown claim id: {0:?}")]
    UnknownClaim(String),

    /// Grid override outside the range a suite supports.
    #[error("invalid grid override: {0}")]
    InvalidOverride(String),
}

pub type Result<T> = std::result::Result<T, Error>;
