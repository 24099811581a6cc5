use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Source/target arities do not fit together.
    #[error("arity mismatch: {0}")]
    Arity(String),
    /// Operands live in different scalar domains or modes.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    /// A q-integer needed as a denominator vanishes in the domain.
    #[error("[{k}]_q = 0 at {at}")]
    VanishingQInt { k: i64, at: String },
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    /// Input outside the documented preconditions.
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A configured size or time guard was exceeded.
    #[error("resource guard exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
