use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The request exceeds a configured size cap.
    #[error("resource limit exceeded: {what} = {requested} > {cap}")]
    Resource {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    /// An infinite sum did not reach its stopping criterion within its cap.
    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(
        what: &'static str,
        requested: impl Into<u128>,
        cap: impl Into<u128>,
    ) -> Self {
        Error::Resource {
            what,
            requested: requested.into(),
            cap: cap.into(),
        }
    }
}
