use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime (or exceeds the supported modulus range)")]
    NotPrime(u64),

    #[error("operation `{op}` is not supported over {domain}")]
    UnsupportedDomain { op: &'static str, domain: String },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource cap exceeded: block {block} has {size} basis elements (cap {cap})")]
    ResourceCap { block: String, size: usize, cap: usize },
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
