use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field of order {p}^{e} exceeds the 2^20 element cap")]
    FieldTooLarge { p: u64, e: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { n: u64, q: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands live over different fields")]
    FieldMismatch,

    /// An exhaustive search would exceed its budget of `2^cap_bits` steps.
    #[error("enumeration cap exceeded: {what} (cap 2^{cap_bits})")]
    CapExceeded { what: String, cap_bits: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not found: {0}")]
    NotFound(String),

    /// An internal cross-check failed. Results computed past this point
    /// cannot be trusted.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn cap(what: impl Into<String>, cap_bits: u32) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap_bits,
        }
    }
}
