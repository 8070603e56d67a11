use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file.
    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },

    /// A pair that was required to be an edge is not one.
    #[error("({u}, {v}) is not an edge")]
    NonEdge { u: u32, v: u32 },

    /// A documented precondition was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Instance exceeds a brute-force oracle guard.
    #[error("oracle guard: {0}")]
    OracleGuard(String),

    /// Internal state failed a consistency check. Indicates a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
