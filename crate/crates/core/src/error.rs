use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("series denominator has no invertible constant term")]
    NonInvertibleDenominator,

    #[error("denominator of {coefficient} vanishes at the given point")]
    DenominatorVanishes { coefficient: String },

    #[error("kernel has dimension {0}, expected at most one")]
    UnexpectedNullity(usize),

    #[error("leading term of the zero element")]
    ZeroElement,

    #[error("variable {var} has no pure power in the support ideal; the ideal is not zero-dimensional")]
    NotZeroDimensional { var: usize },

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("ideal has {m} generators but dimension {d} was requested")]
    TooFewGenerators { m: usize, d: usize },

    #[error("no certified reduction with entries bounded by {0}")]
    SearchExhausted(u32),

    #[error("value did not stabilize up to {0}")]
    NotStabilized(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}
