use thiserror::Error;

/// Error taxonomy shared by the whole crate.
///
/// `Parse` covers malformed textual or structured input, `Domain` covers
/// mathematically invalid requests (reducible curve, zero inverse, violated
/// precondition), and `CapExceeded` covers requests that are valid but larger
/// than the configured table or enumeration caps.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn cap(msg: impl Into<String>) -> Self {
        Error::CapExceeded(msg.into())
    }
}
