use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by the finite-set engine and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration needs {needed} items but the budget is {budget}")]
    BudgetExceeded { needed: BigUint, budget: u64 },

    #[error("domain mismatch: expected a set of size {expected}, found {found}")]
    DomainMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for a set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("a wide (co)limit needs at least one leg")]
    EmptyLegList,

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("morphism is not cartesian")]
    NotCartesian,

    #[error("morphism is not a monomorphism")]
    NotMono,

    #[error("ill-formed diagram: {0}")]
    IllFormedDiagram(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("mixed polynomial and Dirichlet terms at position {position}")]
    MixedKind { position: usize },

    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn mismatch(msg: impl Into<String>) -> Error {
    Error::Mismatch(msg.into())
}
