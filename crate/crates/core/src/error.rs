use thiserror::Error;

/// Errors produced by the library.
///
/// `Input` and `Syntax` style errors map to exit code 2 in the CLI; the
/// structural and data variants signal inconsistent inputs or data files.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("not a root: {0}")]
    NotARoot(String),

    #[error("inadmissible diagram {label}(r={r}, l={l}): {reason}")]
    Inadmissible {
        label: String,
        r: usize,
        l: usize,
        reason: String,
    },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unbound parameter `{0}`")]
    Unbound(String),

    #[error("catalog data error: {0}")]
    Data(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("involution has not passed validation: {0}")]
    Unvalidated(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    /// True for errors caused by malformed user input rather than by a
    /// failed mathematical check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_)
                | Error::Dimension { .. }
                | Error::NotARoot(_)
                | Error::Inadmissible { .. }
                | Error::Syntax { .. }
                | Error::Unbound(_)
                | Error::Precondition(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
