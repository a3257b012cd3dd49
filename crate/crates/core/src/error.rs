use alloc::boxed::Box;
use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid edge ({u}, {v}) for n = {n}: need u < v < n")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("edge index {e} out of range for n = {n}")]
    EdgeOutOfRange { e: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A work cap was hit before any work started.
    #[error("{what} requires {required} units of work, cap is {cap}")]
    WorkCap {
        what: &'static str,
        required: String,
        cap: String,
    },

    /// A detector ran out of node expansions without a definitive answer.
    #[error("search budget of {budget} node expansions exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("trial {trial_index} failed: {source}")]
    Trial {
        trial_index: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for cap and budget errors, i.e. the instance was valid but too big.
    pub fn is_resource(&self) -> bool {
        match self {
            Error::WorkCap { .. } | Error::BudgetExhausted { .. } => true,
            Error::Trial { source, .. } => source.is_resource(),
            _ => false,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
