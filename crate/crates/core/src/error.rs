use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("capacity error: label width {width} exceeds the limit of {limit} bits")]
    Capacity { width: u32, limit: u32 },
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("isomorphism not found: {0}")]
    IsomorphismNotFound(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
