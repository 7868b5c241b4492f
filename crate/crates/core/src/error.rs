use thiserror::Error;

use crate::scalar::ScalarKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimension {0} is odd; a 2N x 2N matrix is required")]
    OddDimension(usize),

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("scalar kind mismatch: expected {expected:?}, found {found:?}")]
    KindMismatch { expected: ScalarKind, found: ScalarKind },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not in the requested group: residual {residual:e} exceeds {tolerance:e}")]
    NotMember { residual: f64, tolerance: f64 },

    #[error("determinant formula inconclusive: log|det M| = {log_magnitude} is below the floor {floor}")]
    FormulaInconclusive { log_magnitude: f64, floor: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("factor generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
