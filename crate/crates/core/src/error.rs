use thiserror::Error;

/// Error type shared by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("negative input {0} where a nonnegative integer is required")]
    NegativeInput(i64),

    #[error("partition enumeration refused: n={n} exceeds the bound {bound}")]
    EnumerationBound { n: u64, bound: u64 },

    #[error("factorization refused: {value} exceeds the trial-division bound {bound}")]
    FactorizationBound { value: u64, bound: u64 },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: u64 },

    #[error("point m={m} does not lie on the grid for t={t}, n={n}")]
    OffGrid { t: u32, n: u64, m: u64 },

    #[error("alpha factor requested at vanishing grid point m={m}")]
    VanishingPoint { m: u64 },

    #[error("gamma density is unbounded at x=0 when the shape parameter is below 1")]
    DensityUnbounded,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("iteration failed to converge within {0} steps")]
    NoConvergence(usize),

    #[error("identity `{check}` fails first at index {index}")]
    IdentityViolation { check: &'static str, index: u64 },

    #[error("cache file {path}: {reason}")]
    CacheCorrupt { path: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
