use crate::scalar::QSpec;

/// Errors shared across the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("mismatched coefficient rings: {0} vs {1}")]
    QspecMismatch(QSpec, QSpec),
    #[error("mismatched group shape: expected rank {expected_rank} modulus {expected_modulus}, got rank {got_rank} modulus {got_modulus}")]
    ShapeMismatch {
        expected_rank: usize,
        expected_modulus: u32,
        got_rank: usize,
        got_modulus: u32,
    },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("scalar is not invertible: {0}")]
    NotInvertible(String),
    #[error("root-of-unity order must be at least 2, got {0}")]
    BadOrder(u32),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("group must be finite for this check (use modulus >= 2)")]
    InfiniteGroup,
    #[error("missing graded component for degree {0}")]
    MissingComponent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
