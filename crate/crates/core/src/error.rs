//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by calendar construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DateError {
    #[error("month {0} out of range 1-12")]
    MonthOutOfRange(u32),
    #[error("year {0} precedes the supported minimum of 1900")]
    YearBelowMinimum(i64),
    #[error("invalid date {0:?}, expected YYYY-MM")]
    Invalid(String),
}

/// Errors raised when deriving a conference profile.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("conference {0} has no dated event entered at or before the reference date")]
    Unrankable(String),
}

/// Errors raised by the statistics helpers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("median of an empty list is undefined")]
    EmptyInput,
    #[error("paired test needs at least 2 paired observations, got {0}")]
    InsufficientData(usize),
    #[error("paired test needs equally long samples, got {0} and {1}")]
    MismatchedLengths(usize, usize),
}

/// Errors raised while parsing run or qrels files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("{file}:{line}: {reason}")]
    Malformed {
        file: String,
        line: usize,
        reason: String,
    },
}

/// Errors raised during corpus ingestion. Warnings (skipped rows) are
/// reported separately; these abort the run.
#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{file}:{line}: {reason}")]
    Malformed {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("{file}:{line}: duplicate event key {key:?}")]
    DuplicateEventKey {
        file: String,
        line: usize,
        key: String,
    },
    #[error("failed to read {file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
}
