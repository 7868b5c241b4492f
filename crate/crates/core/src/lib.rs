//! Structured dense linear algebra for symplectic matrices.
//!
//! The crate is generic over the scalar type ([`Scalar`]): `f32`, `f64` and
//! their complex counterparts. It provides
//!
//! * dense matrices with LU factorization and log-scaled determinants
//!   ([`linalg`]),
//! * the standard form `J`, membership predicates, the `(C, D)` block
//!   machinery and determinant certificates ([`symplectic`]),
//! * seeded samplers for the real, complex and conjugate symplectic groups
//!   ([`generators`]).

pub mod error;
pub mod generators;
pub mod linalg;
pub mod scalar;
pub mod symplectic;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{
    log_det, parse_matrix, random_gaussian, write_matrix, AnyMatrix, LogDet, LuFactorization, Rng,
    SquareMatrix,
};
pub use scalar::{RealScalar, Scalar, ScalarKind};
pub use symplectic::SymplecticKind;
pub use tolerance::ToleranceConfig;

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

/// Real double-precision matrix.
pub type RMatrix = SquareMatrix<f64>;
/// Complex double-precision matrix.
pub type CMatrix = SquareMatrix<C64>;
pub type RMatrix32 = SquareMatrix<f32>;
pub type CMatrix32 = SquareMatrix<C32>;

pub type LogDet64 = LogDet<f64>;
