use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: bases must be at least 2")]
    InvalidBase(u64),
    #[error("base {0} exceeds the supported maximum 2^63 - 1")]
    BaseTooLarge(u64),
    #[error("digit {digit} is out of range for base {base}")]
    InvalidDigit { digit: u64, base: u64 },
    #[error("leading digit is zero")]
    LeadingZero,
    #[error("empty digit list")]
    EmptyDigits,
    #[error("digit list is not palindromic")]
    NotPalindromic,
    #[error("undefined for input: {0}")]
    UndefinedInput(&'static str),
    #[error("invalid base range [{lo}, {hi}]")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot factor {0}: composite cofactor beyond 64 bits")]
    FactorizationUnsupported(String),
    #[error("search reached the base cap {0} without a result")]
    BaseCapExceeded(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
