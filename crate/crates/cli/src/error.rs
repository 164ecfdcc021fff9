use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] mop_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Core(mop_core::Error::Admissibility(_)) => "admissibility",
            CliError::Core(mop_core::Error::Precondition(_)) => "precondition",
            CliError::Core(_) => "arithmetic",
            CliError::Io(_) => "io",
            CliError::Json(_) | CliError::Csv(_) => "serialization",
        }
    }

    /// Process exit code: everything here is a configuration-class failure.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
