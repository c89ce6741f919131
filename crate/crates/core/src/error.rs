//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid static configuration (modulus not a power of two, qubit count
    /// out of range, unsupported lowering target, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A runtime argument violated a precondition (dimension mismatch,
    /// out-of-range entry, bad probability, ...).
    #[error("input error: {0}")]
    Input(String),

    /// An exhaustive check or search was asked to cover more than `2^24`
    /// points.
    #[error("domain too large: {0}")]
    DomainTooLarge(String),

    /// Instance generation ran out of rejection-sampling attempts.
    #[error("instance generation failed: {0}")]
    Generation(String),

    /// A stored `y` did not match the recomputed `A*s + e`.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// Text could not be parsed (polynomial, transcript, instance file).
    #[error("parse error: {0}")]
    Parse(String),

    /// The requested image `w` has no preimage on one of the branches.
    #[error("w is not in the image of the function")]
    NotInImage,

    /// Trapdoor inversion found more than one preimage on a branch; the
    /// instance is not perfectly 2-to-1.
    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    /// A counting oracle refused a query past its distinct-query budget.
    #[error("oracle query budget exhausted (budget {budget})")]
    BudgetExhausted { budget: usize },

    /// A hash identifier is not known to the registry.
    #[error("unknown hash id: {0}")]
    UnknownHash(String),
}
