use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("requested work of {requested:.3e} exceeds the limit of {limit:.3e}")]
    Budget { requested: f64, limit: f64 },
    #[error(transparent)]
    Core(#[from] modone::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit status: 3 for resource limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget { .. } | CliError::Core(modone::Error::ResourceLimit { .. }) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
