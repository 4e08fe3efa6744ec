use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("series too short: need {needed} terms, have {have}")]
    SeriesTooShort { needed: i64, have: i64 },

    #[error("square root of a series with odd valuation {0}")]
    OddValuationSqrt(i64),

    #[error("leading coefficient {0} is not a square in Q")]
    NonSquareLeading(String),

    #[error("division by a series that is zero to its truncation")]
    DivisionByZeroSeries,

    #[error("eta quotient has fractional leading exponent (sum m*e = {0}, not divisible by 12)")]
    FractionalEtaExponent(i64),

    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),

    #[error("fiber at {0} is singular; classify it instead of counting")]
    SingularFiber(String),

    #[error("fiber at {0} is smooth; count it instead of classifying")]
    SmoothFiber(String),

    #[error("cache entry {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
