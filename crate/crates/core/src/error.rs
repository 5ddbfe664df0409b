use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A history cannot be interpreted by the game it was handed to.
    #[error("invalid history: {0}")]
    InvalidHistory(String),
    /// An action outside the legal set was applied in legal-action mode.
    #[error("illegal action {action} at node with {num_legal} legal actions")]
    IllegalAction { action: usize, num_legal: usize },
    /// An operation requiring a terminal node was called elsewhere, or vice versa.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A joint policy is missing a row for a reachable information state.
    #[error("missing policy entry for info state `{0}`")]
    MissingPolicy(String),
    /// A quantity is undefined because the information state is unreachable.
    #[error("undefined value at unreachable info state `{0}`")]
    UndefinedValue(String),
    /// A parameter is out of its valid domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An unknown game, variant, rule, or field name was requested.
    #[error("unknown name: {0}")]
    UnknownName(String),
    /// A trajectory left the simplex beyond the clamping tolerance.
    #[error("integration failure: point left the simplex by {excess:.3e}; retry with dt <= {suggested_dt}")]
    Integration { excess: f64, suggested_dt: f64 },
    /// Malformed configuration or data file contents.
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
