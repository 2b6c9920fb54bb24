use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size n={0} is outside 1..=62")]
    GroundSetSize(u32),

    #[error("mask {mask:#x} has bits outside the ground set of size {n}")]
    MaskOutOfRange { mask: u64, n: u32 },

    #[error("invalid parameter: {0}")]
    InvalidArgument(String),

    /// A configured size cap would be exceeded (memory guard).
    #[error("{what} = {value} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    /// A configured work budget would be exceeded.
    #[error("{what}: work budget of {budget} exhausted")]
    BudgetExceeded { what: &'static str, budget: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// True for cap and budget violations, the "resource" class of failures.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::BudgetExceeded { .. })
    }
}
