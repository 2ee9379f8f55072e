use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range (valid: {valid})")]
    OutOfRange { index: usize, valid: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series with zero constant term is not invertible")]
    NotInvertible,

    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("arithmetic function {label} is not normalized: g(1) = {value}")]
    NotNormalized { label: String, value: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown arithmetic function '{0}'")]
    UnknownFunction(String),
}

impl Error {
    pub(crate) fn out_of_range(index: usize, valid: impl Into<String>) -> Self {
        Error::OutOfRange {
            index,
            valid: valid.into(),
        }
    }
}
