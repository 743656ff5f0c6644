use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    /// Diameter-two decomposition needs `q >= k + 2`.
    #[error("threshold q = {q} is below k + 2 = {} required for decomposition", .k + 2)]
    ThresholdTooSmall { k: usize, q: usize },

    #[error("threshold q must be at least 1")]
    ZeroThreshold,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("{rejected} reported solutions are not maximal k-defective cliques of the input")]
    Verification { rejected: u64 },

    #[error("cannot start worker threads: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),

    #[error("graph has {n} vertices; the brute-force oracle is limited to {limit}")]
    OracleTooLarge { n: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
