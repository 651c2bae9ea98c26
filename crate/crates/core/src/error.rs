use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of a function (NaN, infinity, p ∉ (0,1)).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid distribution parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("sample too small: n = {n}, at least {min} required")]
    SampleTooSmall { n: usize, min: usize },

    #[error("unsupported sample size n = {n} (supported range {min}..={max})")]
    UnsupportedSize { n: usize, min: usize, max: usize },

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("skewness {gamma1} is outside the skew-normal range (|gamma1| < {bound})")]
    InadmissibleSkewness { gamma1: f64, bound: f64 },

    #[error("objective is not finite at the start point")]
    NonFiniteStart,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("no usable data: {0}")]
    EmptyData(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front-end.
    ///
    /// 2 usage/configuration, 3 data, 4 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Argument(_) => 2,
            Error::Schema(_)
            | Error::EmptyData(_)
            | Error::Io { .. }
            | Error::Csv(_)
            | Error::Json(_)
            | Error::SampleTooSmall { .. }
            | Error::UnsupportedSize { .. }
            | Error::Degenerate(_)
            | Error::Domain(_) => 3,
            Error::InvalidParams(_) | Error::InadmissibleSkewness { .. } | Error::NonFiniteStart => 4,
        }
    }
}
