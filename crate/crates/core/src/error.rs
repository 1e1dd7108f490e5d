use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series must have zero constant term, found {0}")]
    NonZeroConstant(String),

    #[error("series must have constant term 1, found {0}")]
    ConstantNotOne(String),

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstant,

    #[error("series must have a nonzero linear coefficient")]
    ZeroLinear,

    #[error("index {index} exceeds available range {max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("parse error: {0}")]
    Parse(String),
}
