use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Dp4Error {
    /// Unsupported field order, bad point configuration, mismatched truncations.
    #[error("configuration error: {0}")]
    Config(String),
    /// Non-nef class, malformed class text, violated class hypothesis.
    #[error("invalid class: {0}")]
    InvalidClass(String),
    /// The surface model needs four distinct rational points on P^1.
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration budget or lattice cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

impl Dp4Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Dp4Error::ResourceCap(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Dp4Error>;
