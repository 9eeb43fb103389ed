use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a positive integer")]
    NonPositive(i64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{divisor} does not divide {modulus}")]
    NotADivisor { divisor: u64, modulus: u64 },

    #[error("exponent vector has {got} entries but the divisor basis has {expected}")]
    Dimension { expected: usize, got: usize },

    #[error("the constant eta quotient has no level")]
    Constant,

    #[error("eta quotient is not holomorphic on Gamma0({0})")]
    NotHolomorphic(u64),

    #[error("eta quotient is factorizable on Gamma0({0}), so it is not quasi-irreducible")]
    NotQuasiIrreducible(u64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("cannot parse eta quotient: {0}")]
    Parse(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
