use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed value: {0}")]
    Malformed(String),

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("k mismatch: {0} vs {1}")]
    KMismatch(usize, usize),

    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),

    #[error("invalid acceptor: {0}")]
    InvalidAcceptor(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("{0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code for this error: 3 for resource caps, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) => 3,
            _ => 2,
        }
    }
}
