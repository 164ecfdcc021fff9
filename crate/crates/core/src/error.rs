use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("gamma function pole: {0}")]
    Pole(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("series does not terminate: {0}")]
    NonTerminating(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inadmissible parameters: {0}")]
    Admissibility(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("gamma factors do not cancel: {0}")]
    IrreducibleGamma(String),
}

pub type Result<T> = std::result::Result<T, Error>;
