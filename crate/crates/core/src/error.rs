use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty order")]
    EmptyOrder,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("isomorphism verdict is indeterminate")]
    Indeterminate,
    #[error("schema mismatch: {0}")]
    Schema(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not representable: {0}")]
    Representability(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("not in the image of the encoding: {0}")]
    NotInImage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
