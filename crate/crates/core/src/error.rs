use thiserror::Error;

use crate::exactmath::{rational_string, ExactError, Rational};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("A-system is singular (determinant {})", rational_string(.determinant))]
    SingularSystem { determinant: Rational },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("closed-form h(c) exists only for weight 5, setup has p = {p}")]
    WrongWeight { p: u32 },
    #[error(
        "interpolated numerator failed its check points up to degree bound {degree_bound}; \
         retry with a larger bound"
    )]
    InterpolationMismatch { degree_bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
