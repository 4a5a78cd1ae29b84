//! Error type shared by every layer of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arena mismatch: {0}")]
    ArenaMismatch(String),

    #[error("duplicate variable name `{0}` in arena")]
    DuplicateVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable index {index} out of range for arena of size {len}")]
    VariableIndex { index: usize, len: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("not alternating / not divisible by ({0}): nonzero remainder")]
    NotDivisible(String),

    #[error("polynomial is not symmetric in block {block:?}: {detail}")]
    NotSymmetric { block: Vec<String>, detail: String },

    #[error("decomposition exceeded {0} reduction steps")]
    ReductionLimit(usize),

    #[error("malformed polynomial text: {0}")]
    Parse(String),

    #[error("zero coefficient stored for exponent {0:?}")]
    ZeroCoefficient(Vec<u32>),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular: point lies on the critical set (|det| = {0:e}); evaluate the rational formula instead")]
    Singular(f64),

    #[error("point outside the domain: {0}")]
    OutsideDomain(String),

    #[error("internal inconsistency in kernel pipeline: {0}")]
    Pipeline(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("log branch tracking failed: {0}")]
    Branch(String),
}
