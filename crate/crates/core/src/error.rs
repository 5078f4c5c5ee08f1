use thiserror::Error;

/// Errors raised by the library.
///
/// Each variant maps onto one CLI exit class: `Invalid`, `Parse` and
/// `Domain` are caller mistakes, `NotDivisible` and `Verification` signal an
/// internal inconsistency, and `Capacity` is a size limit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("outside the domain of {what}: {reason}")]
    Domain { what: &'static str, reason: String },

    #[error("{what} = {value} exceeds the capacity limit {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    pub(crate) fn capacity_check(what: &'static str, value: usize, limit: usize) -> Result<()> {
        if value > limit {
            Err(Error::Capacity { what, value, limit })
        } else {
            Ok(())
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
