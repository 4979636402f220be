use std::io;

/// Everything that can go wrong in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's precondition
    /// (non-finite margin, empty sample, mismatched lengths, bad
    /// hyperparameter range, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A data file could not be parsed or failed validation.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// The requested quantity is mathematically undefined or not estimable
    /// for the given inputs (e.g. the vote bound when disagreement ≥ ½, or a
    /// target-label statistic without target labels).
    #[error("undefined quantity: {0}")]
    Undefined(String),

    /// The minimizer could not produce a usable iterate.
    #[error("optimization failed: {0}")]
    Optimization(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Shorthand for [`Error::Argument`] from any displayable message.
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
