use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("requested word of length {requested} exceeds the length cap of {cap} symbols")]
    LengthCap { requested: u128, cap: usize },

    #[error("factor set did not saturate before reaching the length cap of {cap} symbols")]
    SaturationCap { cap: usize },

    #[error("generation index {index} is out of range: {reason}")]
    Index { index: u32, reason: &'static str },

    #[error("invalid symbol {0:?}: words contain only '0' and '1'")]
    InvalidSymbol(char),

    #[error("density of the empty word is undefined")]
    EmptyWord,

    #[error("length {n} is outside 1..={max_len}")]
    LengthOutOfRange { n: usize, max_len: usize },

    #[error("average over an empty selection of records")]
    EmptySelection,

    #[error("max_len must be at least 1")]
    ZeroMaxLen,

    #[error("malformed record for subword {subword:?}: {reason}")]
    Record { subword: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
