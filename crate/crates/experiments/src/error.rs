use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    /// Bad user input, detected before any computation.
    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error(transparent)]
    Core(#[from] torus_wigner::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("manifest error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

impl ExperimentError {
    /// Process exit code: 2 for validation failures, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            ExperimentError::Validation(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = ExperimentError> = std::result::Result<T, E>;
