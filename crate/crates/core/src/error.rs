use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),

    /// The standard-monomial set of the ideal is unbounded and no degree bound was given.
    #[error("standard monomial set is infinite: variable x{var} has no pure-power generator")]
    InfiniteSet { var: usize },

    #[error("point set does not satisfy the monomial condition")]
    MonomialConditionViolated,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not triangular")]
    NotTriangular,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix is not nilpotent within {0} steps")]
    NonNilpotent(usize),

    #[error("entry ({row}, {col}) is not integral")]
    NonIntegralEntry { row: usize, col: usize },

    #[error("missing sequence value at {0}")]
    MissingValue(String),

    #[error("series has zero constant term and cannot be inverted")]
    NonUnit,

    #[error("substituted series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("linear part of the substitution is singular")]
    SingularJacobian,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("denominator at position {pos} is not a unit")]
    NonUnitDenominator { pos: usize },

    #[error("window point of degree {degree} exceeds truncation cap {cap}")]
    WindowExceedsCap { degree: u32, cap: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}
