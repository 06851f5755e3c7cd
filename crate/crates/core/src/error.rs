use thiserror::Error;

/// Errors surfaced by the library. Variants carry the message text used by
/// the CLI, so `to_string()` is the stable user-facing form.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero modulus")]
    ZeroModulus,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("both inputs are zero")]
    BothZero,
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("polynomial {0} has zero constant term")]
    ZeroConstantTerm(String),
    #[error("field generator not primitive")]
    NotPrimitive,
    #[error("fast path requires primitive factor")]
    FastPathNotPrimitive,
    #[error("degree {0} exceeds supported bound {1}")]
    DegreeTooLarge(u32, u32),
    #[error("{0} does not divide {1}")]
    NotADivisor(u64, u64),
    #[error("degree must be even, got {0}")]
    OddDegree(u32),
    #[error("order must be at least {0}, got {1}")]
    OrderTooSmall(u32, u32),
    #[error("state {state:#x} does not fit in {width} stages")]
    StateWidth { state: u64, width: u32 },
    #[error("identical factors")]
    IdenticalFactors,
    #[error("orders {0} and {1} violate the required divisibility")]
    OrderDivisibility(u64, u64),
    #[error("adjacency graph is disconnected")]
    Disconnected,
    #[error("invalid spanning choice: {0}")]
    InvalidTree(String),
    #[error("sequence length {0} does not equal 2^{1}")]
    LengthMismatch(usize, u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
