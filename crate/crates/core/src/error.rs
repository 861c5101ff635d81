use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("ambient module mismatch: {0}")]
    AmbientMismatch(String),

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("operation undefined on the zero module")]
    ZeroModule,

    #[error("independent routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
