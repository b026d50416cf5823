use thiserror::Error;

/// Errors raised by the simulation and exact-computation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("{what}: size {size} exceeds the supported limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("no odd permutation exists on a set of {0} points")]
    UnsatisfiableParity(usize),

    #[error("main term is degenerate for {partition} with k = {k}: a factor divides by zero")]
    DegenerateRegime { partition: String, k: usize },

    #[error("distributions are indexed by different sets")]
    MismatchedSupport,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
