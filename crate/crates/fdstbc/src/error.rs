use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("both components of the bimodule element are zero")]
    BothZero,
    #[error("singular input: both blocks are zero")]
    SingularInput,
    #[error("relative norm did not reduce to an element of L")]
    NonClosure,
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("search space of {size:.3e} exceeds the cap of {cap:.0e}")]
    TooLarge { size: f64, cap: f64 },
    #[error("code {0} declares no decoding groups")]
    NoGroups(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
