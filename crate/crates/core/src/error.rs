use std::fmt;

use thiserror::Error;

/// Which of the two score pools a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreClass {
    /// Same identity (proposition A).
    Mated,
    /// Different identities (proposition B).
    Nonmated,
}

impl fmt::Display for ScoreClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoreClass::Mated => f.write_str("mated"),
            ScoreClass::Nonmated => f.write_str("nonmated"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} score list is empty")]
    EmptyClass(ScoreClass),

    #[error("non-finite {class} score at index {index}")]
    NonFiniteScore { class: ScoreClass, index: usize },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid prior {0}: must lie strictly between 0 and 1")]
    InvalidPrior(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("profiles do not share one grid")]
    GridMismatch,

    #[error("negative worst-case magnitude {0}")]
    NegativeMagnitude(f64),

    #[error("invalid simulation spec: {0}")]
    InvalidSpec(String),

    #[error("malformed report: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
