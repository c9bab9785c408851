use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("unknown identity {0}")]
    UnknownIdentity(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed fixture file: {0}")]
    MalformedFixture(String),
    #[error(transparent)]
    Engine(#[from] rumin::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
