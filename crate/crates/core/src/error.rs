use thiserror::Error;

/// Errors raised by the order arithmetic and the algorithms built on it.
///
/// [`Error::Invariant`] marks a broken internal invariant (a bug, or input
/// large enough to escape the tested range). Everything else is a
/// precondition failure on the caller's side.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in 64-bit coordinates")]
    Overflow,
    #[error("half coordinates ({0}, {1}, {2}, {3}) violate A = B = C + D (mod 2)")]
    Parity(i64, i64, i64, i64),
    #[error("cannot parse quaternion: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("input must be nonzero")]
    Zero,
    #[error("gcd of two zero elements is undefined")]
    BothZero,
    #[error("element has even norm {0}; an odd element is required")]
    EvenNorm(u64),
    #[error("element has odd norm {0}; an even norm is required")]
    OddNorm(u64),
    #[error("element of norm {0} is not a unit")]
    NotUnit(u64),
    #[error("modulus {0} must be odd and positive")]
    BadModulus(u64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("element is not primitive to {0}")]
    NotPrimitiveTo(u64),
    #[error("element is not primitive (primary with coordinate gcd 1)")]
    NotPrimitive,
    #[error("norm {norm} is not divisible by {p}")]
    NormNotDivisible { norm: u64, p: u64 },
    #[error("element is not primary")]
    NotPrimary,
    #[error("{0} is not an odd rational prime")]
    NotOddPrime(u64),
    #[error("prime order {order:?} does not multiply out to the norm {norm}")]
    PrimeOrder { order: Vec<u64>, norm: u64 },
    #[error("value {value} exceeds the configured bound {bound}")]
    BoundExceeded { value: u64, bound: u64 },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
