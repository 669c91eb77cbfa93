use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid lattice spec: {0}")]
    InvalidSpec(String),
    #[error("malformed configuration: {0}")]
    Structural(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("degenerate formula: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
