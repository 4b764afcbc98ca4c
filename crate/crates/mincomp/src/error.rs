//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A component or family fails its structural invariants.
    #[error("invalid set description: {0}")]
    Invalid(String),

    /// An exact-only operation received an oracle-tagged operand.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A caller violated an operation precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computation would materialize more data than the configured budget.
    #[error("budget exceeded while {what} (limit {limit})")]
    Budget { what: String, limit: u64 },

    /// A set cannot be brought into the eventually periodic structured form.
    #[error("structural error: {0}")]
    Structure(String),

    /// A coverage target contains a point that no candidate covers.
    #[error("window not coverable: first uncovered point {0}")]
    Uncoverable(crate::Int),

    /// A document failed to parse or serialize.
    #[error("document error: {0}")]
    Document(String),

    /// Two certified verdicts contradict each other. This would contradict
    /// the underlying theorems and always indicates a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
