use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments violate an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters fall outside every region where a formula is established.
    #[error("outside the covered region: {0}")]
    OutOfRegion(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
