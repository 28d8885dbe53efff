//! Crate-wide error type.
//!
//! Operator-style conveniences (`+`, `*`) panic on structural mismatch; every named
//! operation returns [`Result`] and reports which precondition failed.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("ring mismatch: expected {expected}, got {got}")]
    RingMismatch { expected: &'static str, got: &'static str },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("linear system is inconsistent")]
    InconsistentSystem,

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: u32, col: u32, msg: String },

    #[error("form does not split into linear factors over the cyclotomic field: {0}")]
    NonSplit(String),

    #[error("arrangement is not simple (a multiplicity exceeds 1)")]
    NotSimple,

    #[error("arrangement is reducible")]
    Reducible,

    #[error("bounds inapplicable: {0}")]
    BoundsInapplicable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
