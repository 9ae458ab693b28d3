use thiserror::Error;

use crate::scalars::FieldError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("directed cycle through vertex {0}")]
    CycleDetected(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("quiver too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("not a complex: d^2 != 0 at degree {0}")]
    NotAComplex(i32),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("complex is not minimal")]
    NotMinimal,
    #[error("negative power of a non-invertible functor")]
    NegativePowerOfNonInvertible,
    #[error("functor is not invertible: {0}")]
    NonInvertibleFunctor(String),
    #[error("iterate {0} of the generator is zero")]
    ZeroIterate(usize),
    #[error("generator is not a split-generator: vertex {0} is never touched")]
    NotSplitGenerator(String),
    #[error("budget exhausted before two iterates were computed")]
    Timeout,
    #[error("audit failure: {0}")]
    AuditFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
