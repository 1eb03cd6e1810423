use thiserror::Error;

/// Everything that can go wrong across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("series is zero to truncation order {0}")]
    ZeroSeries(i64),
    #[error("polynomial part unknown: truncation order {0} is above 0")]
    PolyPartUnknown(i64),
    #[error("no usable positive-degree root: {0}")]
    NoPositiveRoot(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("repeated root: D vanishes")]
    RepeatedRoot,
    #[error("profile undetermined: {0}")]
    ProfileUndetermined(String),
    #[error("singular coefficient match at t^{0}")]
    SingularMatch(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate transform: {0}")]
    Degenerate(String),
    #[error("vanishing denominator at convergent {0}")]
    VanishingDenominator(usize),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
