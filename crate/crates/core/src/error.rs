//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors raised by constructors, solvers, and oracles.
///
/// Support violations in divergences are deliberately *not* errors: they
/// return an infinite value, which is the mathematically correct answer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("empty alphabet")]
    EmptyAlphabet,

    #[error("negative probability {value:e} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum} which is more than {slack:e} away from 1")]
    NotNormalized { sum: f64, slack: f64 },

    #[error("rows have inconsistent lengths: row {row} has {got} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, got: usize },

    #[error("order must be a positive finite real, got {0}")]
    InvalidAlpha(f64),

    #[error("order {0} is within 1e-6 of 1; use the Shannon-order routines instead")]
    AlphaNearOne(f64),

    #[error("rho must be greater than -1, got {0}")]
    RhoOutOfRange(f64),

    #[error("algorithm {algorithm} requires an order greater than 1, got {alpha}")]
    IncompatibleAlpha { algorithm: &'static str, alpha: f64 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("custom initialization does not fit this solver: {0}")]
    IncompatibleInit(&'static str),

    #[error("alphabet size {size} exceeds the exhaustive-search limit {limit}")]
    DimensionTooLarge { size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
