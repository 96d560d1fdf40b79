use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-visible failure;
/// internal invariant breaks surface as [`Error::Internal`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{p} is not an odd prime: {reason}")]
    InvalidPrime { p: u64, reason: &'static str },

    #[error("the p-adic valuation of zero is infinite")]
    ZeroValuation,

    #[error("ground set size {v} is outside 1..={max}")]
    GroundSize { v: usize, max: usize },

    #[error("point {point} is outside the ground set 1..={v}")]
    PointOutOfRange { point: usize, v: usize },

    #[error("ground set mismatch: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("level {s} exceeds the ground set size {v}")]
    LevelOutOfRange { s: usize, v: usize },

    #[error("points must be distinct, got {0} twice")]
    RepeatedPoint(usize),

    #[error("cannot delete a point from a ground set of size 1")]
    DeletePointFromSingleton,

    #[error("lambda_{step} = {numerator}/{denominator} is not an integer")]
    NonIntegralLambda {
        step: usize,
        numerator: String,
        denominator: String,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no integral solution: {0}")]
    Infeasible(String),

    #[error("{what} has {count} elements, above the guard of {guard}")]
    GuardExceeded {
        what: &'static str,
        count: String,
        guard: u64,
    },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("json: {0}")]
    Json(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
