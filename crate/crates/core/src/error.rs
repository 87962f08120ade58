use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must contain at least two distinct symbols, got {0:?}")]
    InvalidAlphabet(String),

    #[error("k-mer rank overflows u64 for sigma={sigma}, k={k}")]
    RankOverflow { sigma: usize, k: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no valid window: {kmers} valid k-mers cannot fill a window of {w}")]
    NoValidWindow { kmers: usize, w: usize },

    #[error("empty k-mer set")]
    EmptySet,

    #[error("duplicate vector at index {0} in set")]
    DuplicateVector(usize),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("unknown sequence name {0:?}")]
    UnknownSequence(String),

    #[error("region {name}:{start}-{end} exceeds sequence length {len}")]
    RegionOutOfBounds {
        name: String,
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}
