use thiserror::Error;

use crate::chow::ProductSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch {
        left: ProductSpace,
        right: ProductSpace,
    },

    #[error("exponents {exponents:?} out of range for {space}")]
    ExponentOutOfRange {
        space: ProductSpace,
        exponents: Vec<usize>,
    },

    /// The constant term of a class passed to `invert_unit` was not 1.
    #[error("not a unit class: constant term is {0}")]
    NotUnit(String),

    /// An integrality check failed; the supplied Segre class is inconsistent.
    #[error("coefficient {index} is not an integer: {value}")]
    NonInteger { index: usize, value: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
