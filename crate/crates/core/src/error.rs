use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("numeric failure: {0}")]
    NumericFailure(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("lattice enumeration box of {cells:.3e} cells exceeds the budget of {budget}")]
    ResourceLimit { cells: f64, budget: u64 },
    #[error("singular input: {0}")]
    SingularInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
