use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("probability vector sums to {sum} (deviation {deviation:e} exceeds {tolerance:e})")]
    NotNormalized {
        sum: f64,
        deviation: f64,
        tolerance: f64,
    },

    #[error("entry {index} is negative ({value:e})")]
    NegativeMass { index: usize, value: f64 },

    #[error("entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{name} = {value} is out of range: {constraint}")]
    OutOfRange {
        name: &'static str,
        value: String,
        constraint: &'static str,
    },

    #[error("absolute continuity violated at index {index}: P = {p:e} but Q = 0")]
    AbsoluteContinuityViolation { index: usize, p: f64 },

    #[error("internal consistency: {quantity} evaluated to {value:e}, which is below the round-off floor")]
    NegativeInformation { quantity: &'static str, value: f64 },

    #[error("enumeration oracle supports n <= {max}, got n = {n}")]
    OracleTooLarge { n: usize, max: usize },

    #[error("conditioning event has zero probability (N = {ell})")]
    NullEvent { ell: usize },

    #[error("invalid family spec: {0}")]
    Family(String),

    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn out_of_range(
        name: &'static str,
        value: impl ToString,
        constraint: &'static str,
    ) -> Self {
        Error::OutOfRange {
            name,
            value: value.to_string(),
            constraint,
        }
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the configuration or command line, including
    /// unreadable config files and unwritable output paths.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::Config { .. }
                | Error::Family(_)
                | Error::Json(_)
                | Error::OutOfRange { .. }
                | Error::OracleTooLarge { .. }
                | Error::Io { .. }
        )
    }
}
