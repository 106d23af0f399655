use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Invalid rotation parameters or other bad numeric input.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// An operation was applied outside its mathematical domain
    /// (inverse of zero, sign of a non-real element, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Mixing values from two different cyclotomic fields.
    #[error("field mismatch: {0}")]
    WrongContext(String),

    /// An orbit touched the critical line where a symbolic word was required.
    #[error("orbit touches the critical line at index {index}")]
    OnCriticalLine { index: usize },

    /// No exact return was found within the iteration budget.
    #[error("no period found within budget of {budget} steps")]
    BudgetExhausted { budget: u64 },

    /// The linear part of an affine map is the identity, so it has no unique
    /// rotation center.
    #[error("degenerate rotation: linear part is the identity")]
    DegenerateRotation,

    /// A check that must hold failed; carries a description.
    #[error("falsified: {0}")]
    Falsified(String),

    /// Text input could not be parsed.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
