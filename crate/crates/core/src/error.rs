use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature needs at least one boundary")]
    NoBoundaries,
    #[error("all-punctures unsupported: at least one boundary must carry an edge")]
    AllPunctures,
    #[error("internal consistency failure: inexact division in {0}")]
    InexactDivision(String),
    #[error("memo conflict at {key}: {first} vs {second}")]
    MemoConflict {
        key: String,
        first: String,
        second: String,
    },
    #[error("polygon size {size} exceeds enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("invalid gluing word: {0}")]
    InvalidWord(String),
    #[error("gluing invariant violated: {0}")]
    Topology(String),
    #[error("{free} free labels cannot fill a {size}-gon with glued pairs")]
    Parity { size: usize, free: usize },
    #[error("series truncation order {have} too small, need at least {need}")]
    Truncation { need: usize, have: usize },
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series has no invertible leading term")]
    NotInvertible,
    #[error("exponential needs a series with zero constant term")]
    NonZeroConstant,
    #[error("logarithm needs a series with constant term one")]
    LogConstant,
    #[error("cache {path}: unsupported header {found:?}")]
    CacheVersion { path: PathBuf, found: String },
    #[error("cache {path}, line {line}: {msg}")]
    CacheParse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("cache {path}: stored count for {key} is {stored}, recomputed {expected}")]
    CacheMismatch {
        path: PathBuf,
        key: String,
        stored: String,
        expected: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
