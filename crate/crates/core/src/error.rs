use std::path::PathBuf;

use thiserror::Error;

use crate::cube::{MAX_DIM, MIN_DIM};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} outside supported range [{MIN_DIM}, {MAX_DIM}]")]
    Dimension(usize),

    #[error("expected {expected} values for n = {n}, got {got}")]
    Length { n: usize, expected: usize, got: usize },

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("coordinate {i} out of range [1, {n}]")]
    Coordinate { i: usize, n: usize },

    #[error("pair coordinates must be distinct, got ({0}, {0})")]
    SameCoordinate(usize),

    #[error("exponent p = {0} must be at least 1")]
    Exponent(f64),

    #[error("heat time must be finite and nonnegative, got {0}")]
    HeatTime(f64),

    #[error("function is not Boolean")]
    NotBoolean,

    #[error("truth table parse error: {0}")]
    Parse(String),

    #[error("invalid function spec `{spec}`: {reason}")]
    Spec { spec: String, reason: String },

    #[error("quadrature failed to reach tolerance {tolerance:e} on [{a}, {b}]")]
    Quadrature { a: f64, b: f64, tolerance: f64 },

    #[error("internal fault: {0}")]
    InternalFault(String),

    #[error("scan bound too small: objective not increasing at n = {0}")]
    ScanBound(usize),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
