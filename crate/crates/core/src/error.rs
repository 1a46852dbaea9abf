use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at statement {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("event {event}: index {index} exceeds strand count {count}")]
    BadIndex { event: usize, index: usize, count: usize },
    #[error("front ends with {0} strands")]
    Unclosed(usize),
    #[error("basepoint at gap {gap}, strand {pos} is not on a strand")]
    BadBasepoint { gap: usize, pos: usize },
    #[error("grading: {0}")]
    Grading(String),
    #[error("move does not apply: {0}")]
    Move(String),
    #[error("{0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
