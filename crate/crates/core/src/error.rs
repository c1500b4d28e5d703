use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("resource limit: {what} needs {needed}, budget is {budget}")]
    Resource {
        what: &'static str,
        needed: u64,
        budget: u64,
    },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("certificate invalid: failed {}", failed.join(", "))]
    CertificateInvalid { failed: Vec<String> },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
