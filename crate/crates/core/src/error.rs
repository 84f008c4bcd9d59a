use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph cache: {0}")]
    Cache(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// A caller broke a documented precondition (ordering size, `k < 1`,
    /// zero workers, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error(
        "brute-force guard exceeded: n={n}, k={k} needs {combinations} subsets \
         (limit: n <= {max_n} or C(n,k) <= {max_subsets})"
    )]
    GuardExceeded {
        n: usize,
        k: usize,
        combinations: String,
        max_n: usize,
        max_subsets: u64,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}
