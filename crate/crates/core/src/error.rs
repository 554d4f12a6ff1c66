use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid cost function: {0}")]
    InvalidCost(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: f64,
        cap: f64,
    },
    #[error("index blocks are invalid: {0}")]
    InvalidBlocks(String),
    #[error("linear program failed: {0}")]
    Lp(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
