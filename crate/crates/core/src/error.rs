//! Shared error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Lexical or grammatical failure; `offset` is a byte position into the
    /// source text.
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("bad matrix: {0}")]
    BadMatrix(String),

    #[error("bad weight: {0}")]
    BadWeight(String),

    #[error("invalid event: {0}")]
    InvalidEvent(String),

    /// The domain involves the code type, so the caller must supply probes.
    #[error("domain is not finite; supply an explicit probe set")]
    NeedProbes,

    #[error("not finite: {0}")]
    NotFinite(String),

    #[error("not a function: {0}")]
    NotAFunction(String),

    #[error("bad code: {0}")]
    BadCode(String),

    #[error("bad parameter: {0}")]
    BadParam(String),

    #[error("wrong signature: {0}")]
    WrongSignature(String),
}

impl Error {
    pub fn syntax(offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax { offset, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
