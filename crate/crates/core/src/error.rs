use thiserror::Error;

use crate::forms::OrbitIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("vectors do not form a basis")]
    SingularBasis,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("operation requires odd characteristic")]
    OddCharRequired,
    #[error("operation requires even characteristic")]
    OddCharacteristic,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("classification inconsistency: {0}")]
    ClassificationInconsistency(String),
    #[error("orbit index {index} is not admissible for m = {m}")]
    InadmissibleIndex { index: OrbitIndex, m: usize },
    #[error("enumeration of {needed} items exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("transform is singular")]
    SingularTransform,
    #[error("F-number orthogonality violated: {0}")]
    OrthogonalityViolation(String),
    #[error("character sum is not a rational integer: {0}")]
    NonIntegralSum(String),
    #[error("eigenvalue tables inconsistent: {0}")]
    EigenConsistencyViolation(String),
    #[error("negative dual distribution entry at {0}")]
    NegativeDual(OrbitIndex),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("set is not additive")]
    NotAdditive,
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("bad puncturing subspace: {0}")]
    BadSubspace(String),
    #[error("defining set is degenerate: q = 2 and it contains a rank-1 form")]
    DegenerateY,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Enumeration cap used when the caller does not supply one.
pub const DEFAULT_CAP: u64 = 1 << 24;

pub(crate) fn check_cap(needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}
