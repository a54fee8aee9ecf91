//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} out of range (need 2 <= m <= 2^31)")]
    BadModulus(u64),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("duplicate exponent {0} in sparse term list")]
    DuplicateExponent(usize),

    #[error("exponent {exponent} not below truncation {trunc}")]
    ExponentOutOfRange { exponent: usize, trunc: usize },

    #[error("constant term {0} is not a unit, series is not invertible")]
    NonUnitConstant(String),

    #[error("eta expression parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown identity or congruence id `{0}`")]
    UnknownId(String),

    #[error("unknown theta series name `{0}`")]
    UnknownTheta(String),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("arithmetic invariant violated: {0}")]
    Arithmetic(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
