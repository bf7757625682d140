use pizza_core::PizzaError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Domain(#[from] PizzaError),

    #[error("{context}: {source}")]
    Row {
        context: String,
        #[source]
        source: PizzaError,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("verification failed in {suite}: {detail}")]
    Verification { suite: String, detail: String },

    #[error("M_a = {m_a} is not below its bound {bound}")]
    BoundViolated { m_a: f64, bound: f64 },
}

impl CliError {
    /// 1 for failed checks, 2 for usage, domain, and I/O problems.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification { .. } | CliError::BoundViolated { .. } => 1,
            _ => 2,
        }
    }
}
