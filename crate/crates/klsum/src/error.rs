//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error("field size exceeds the cap: q - 1 = {q_minus_one} > {cap}")]
    FieldCapExceeded { q_minus_one: u128, cap: u64 },

    #[error("enumeration exceeds the cap: {terms} character terms > {cap}")]
    TermCapExceeded { terms: u128, cap: u64 },

    #[error("element does not belong to this field")]
    WrongField,

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("discrete log of zero")]
    ZeroDiscreteLog,

    #[error("{divisor} does not divide {of}")]
    NotADivisor { divisor: u64, of: u64 },

    #[error("element lies outside the subfield of degree {degree}")]
    OutsideSubfield { degree: u32 },

    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),

    #[error("{i} is not a unit modulo {p}")]
    NotAUnit { i: u64, p: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
