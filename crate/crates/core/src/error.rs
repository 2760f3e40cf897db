use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside the domain")]
    Domain { function: &'static str, value: f64 },

    #[error("fractional order {0} must lie strictly between 0 and 1")]
    InvalidOrder(f64),

    #[error("invalid time grid: {0}")]
    InvalidGrid(&'static str),

    #[error("invalid spatial mesh: {0}")]
    InvalidMesh(&'static str),

    #[error("invalid problem: {0}")]
    InvalidProblem(&'static str),

    #[error("length mismatch: need {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("tridiagonal elimination hit pivot {pivot:e} at row {row}")]
    Singular { row: usize, pivot: f64 },

    #[error("history does not vanish on the boundary at t = {time}: |phi| = {value:e}")]
    Compatibility { time: f64, value: f64 },

    #[error("non-finite value in solution at step {step}")]
    NonFinite { step: i64 },

    #[error("resolution list invalid: {0}")]
    InvalidResolutions(&'static str),

    #[error("dense materialization limited to {limit} rows, requested {requested}")]
    TooLarge { limit: usize, requested: usize },
}
