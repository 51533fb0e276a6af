use thiserror::Error;

use crate::algebra::Config;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime in 3..=97")]
    InvalidPrime(u32),
    #[error("rank n = {0} is outside 1..={max}", max = crate::algebra::MAX_RANK)]
    InvalidRank(usize),
    #[error("values built under {left} and {right} cannot be mixed")]
    ConfigMismatch { left: Config, right: Config },
    #[error("matrix is singular over F_{0}")]
    SingularMatrix(u32),
    #[error("expected {expected} entries, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator index {index} at offset {pos} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize, pos: usize },
    #[error("exterior generator dt{index} squared at offset {pos}")]
    ExteriorSquare { index: usize, pos: usize },
    #[error("resource guard: {0}")]
    ResourceLimit(String),
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("start vector must be nonzero")]
    ZeroVector,
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("{case} requires n = {required}, got n = {found}")]
    WrongRank {
        case: &'static str,
        required: usize,
        found: usize,
    },
    #[error("invalid JSON payload: {0}")]
    Json(String),
    #[error("bad weights file, line {line}: {msg}")]
    Weights { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
