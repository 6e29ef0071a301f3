//! Crate-wide error type.
//!
//! Every fallible operation in the library reports through [`Error`]; the CLI
//! maps variants onto its stable exit codes (see `cli`).

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^62")]
    NotPrime(u64),
    #[error("extension modulus is reducible over the base prime field")]
    ReducibleModulus,
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("curve degrees out of range: {0}")]
    BadDegrees(String),
    #[error("gcd(n, s) must be 1")]
    NotCoprime,
    #[error("field characteristic divides n*s")]
    BadCharacteristic,
    #[error("no rational affine point found within the retry budget")]
    NoRationalPoint,
    #[error("point is singular on the plane model")]
    SingularPoint,
    #[error("point ({0}; {1}) does not satisfy the curve equation")]
    PointNotOnCurve(String, String),
    #[error("special divisor: {0}")]
    SpecialDivisor(String),
    #[error("result does not split over the working field (irreducible factor degrees {0:?})")]
    NonSplitResult(Vec<usize>),
    #[error("divisor contains a point and its hyperelliptic conjugate")]
    NotSemiReduced,
    #[error("equal-degree splitting did not converge within the retry budget")]
    InternalFactorFailure,
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn special(msg: impl Into<String>) -> Self {
        Error::SpecialDivisor(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
