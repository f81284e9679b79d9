use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("enumeration cap of {cap} elements exceeded (group order {order})")]
    CapExceeded { cap: u64, order: u128 },
    #[error("subgroup is not normal: conjugate {witness} lies outside it")]
    NotNormal { witness: String },
    #[error("permutation does not normalize the group: {witness}")]
    NotNormalizing { witness: String },
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("cache {path}: {reason}")]
    Cache { path: String, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// Stable numeric code, shared with the C interface.
    pub fn code(&self) -> i32 {
        match self {
            Error::Invalid(_) => 1,
            Error::Unsupported(_) => 2,
            Error::CapExceeded { .. } => 3,
            Error::NotNormal { .. } => 4,
            Error::NotNormalizing { .. } => 5,
            Error::Consistency(_) => 6,
            Error::Cache { .. } => 7,
            Error::Io(_) => 8,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
