use thiserror::Error;

/// Errors raised by the arithmetic, sieve and census routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value must be positive")]
    Zero,
    #[error("modulus {0} is below 2")]
    ModulusTooSmall(u64),
    #[error("{0} is even; an odd modulus is required")]
    EvenModulus(u64),
    #[error("{n} lies outside the supported range [{min}, {max}]")]
    OutOfRange { n: u64, min: u64, max: u64 },
    #[error("{0} is not an odd composite")]
    NotOddComposite(u64),
    #[error("factorization does not multiply out to {0}")]
    InconsistentFactorization(u64),
    #[error("a table of {requested} entries exceeds the memory budget of {budget} entries")]
    MemoryBudget { requested: u64, budget: u64 },
    #[error("checkpoint {checkpoint} exceeds the limit {limit}")]
    CheckpointBeyondLimit { checkpoint: u64, limit: u64 },
    #[error("x = {0} is too small; log log log x must be positive (x > 16)")]
    LimitTooSmall(u64),
    #[error("malformed factor table file: {0}")]
    BadTableFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
