use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range arguments.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The operation's precondition does not hold (e.g. a vanishing edge).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A weighting failed the admissibility conditions.
    #[error("inadmissible weighting: violation {max_violation:e} at pair ({first}, {second})")]
    Inadmissible { max_violation: f64, first: usize, second: usize },

    /// A computed object failed its own certification; signals a numerical
    /// breakdown or an input that slipped past validation.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
