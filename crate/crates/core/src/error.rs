use thiserror::Error;

/// Failure modes shared by every numerical routine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence after {terms} terms")]
    NoConvergence { terms: usize },
    #[error("unknown identity `{0}`")]
    NotFound(String),
    #[error("overflow in {0}")]
    Overflow(&'static str),
    #[error("{rejections} consecutive rejected samples")]
    ExhaustedRejections { rejections: usize },
}

pub type QResult<T> = Result<T, QError>;
