use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    Dimension { left: usize, right: usize },

    #[error("invalid Pauli string {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("resource cap exceeded: {what} (cap {cap}, reached {reached})")]
    ResourceCap {
        what: String,
        cap: usize,
        reached: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, cap: usize, reached: usize) -> Self {
        Error::ResourceCap {
            what: what.into(),
            cap,
            reached,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
