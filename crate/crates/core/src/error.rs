use thiserror::Error;

/// Errors raised by kernel operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("pole")]
    Pole,
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("not divisible")]
    NotDivisible,
    #[error("gcd of zeros")]
    GcdOfZeros,
    #[error("not a polynomial")]
    NotAPolynomial,
    #[error("unit must map to unit")]
    UnitImage,
    #[error("sigma is identity")]
    SigmaIsIdentity,
    #[error("context mismatch")]
    ContextMismatch,
    #[error("closed form undefined for s<1")]
    ClosedFormUndefined,
    #[error("no free part")]
    NoFreePart,
    #[error("n must satisfy 0<=n<d")]
    BasisIndexOutOfRange,
    #[error("not an inner twist")]
    NotInnerTwist,
}

pub type Result<T> = std::result::Result<T, Error>;
