use std::io;

/// Errors from IO, parsing and the core library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] chromathresh_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),

    #[error("invalid argument: {0}")]
    Usage(String),

    /// A verification check found a mismatch.
    #[error("{0}")]
    Invariant(String),
}

impl Error {
    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 2 bad input, 3 resource cap, 4 invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(e) if e.is_resource() => 3,
            Error::Invariant(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
