//! Symplectic forms, membership predicates and determinant certificates.

pub mod blocks;
pub mod certificate;
pub mod form;
pub mod formula;
pub mod lemma;

use std::fmt;
use std::str::FromStr;

pub use blocks::{
    assemble_blocks, block_pair, embed_pair, j_conjugate, split_blocks, unitary_factorization,
    unitary_split_det, BlockPair, BlockQuad,
};
pub use certificate::{theorem_certificate, Certificate, Check, Verdict};
pub use form::{
    check_membership, conjugate_symplectic_residual, form_matrix, membership_residual,
    membership_threshold, symplectic_residual, SymplecticForm,
};
pub use formula::{conj_symplectic_det_formula, formula_matrix};
pub use lemma::{lemma_det, lemma_matrix, lemma_reduction, LemmaProbe};

use crate::error::Error;

/// Which group a matrix belongs to, and therefore which block combination
/// `(C, D)` is formed from it.
///
/// * `RealSymplectic`: `A^T J A = J` over the reals; `C = A11 + A22`, `D = A12 - A21`.
/// * `ComplexSymplectic`: `A^T J A = J` over the complex numbers;
///   `C = A11 + conj(A22)`, `D = A12 - conj(A21)`.
/// * `ConjugateSymplectic`: `A^* J A = J`; `C = A11 + A22`, `D = A12 - A21`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymplecticKind {
    RealSymplectic,
    ComplexSymplectic,
    ConjugateSymplectic,
}

impl SymplecticKind {
    pub const ALL: [SymplecticKind; 3] = [
        SymplecticKind::RealSymplectic,
        SymplecticKind::ComplexSymplectic,
        SymplecticKind::ConjugateSymplectic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SymplecticKind::RealSymplectic => "real",
            SymplecticKind::ComplexSymplectic => "complex",
            SymplecticKind::ConjugateSymplectic => "conjugate",
        }
    }

    /// True when membership uses the conjugate transpose.
    pub fn uses_conjugate_transpose(self) -> bool {
        self == SymplecticKind::ConjugateSymplectic
    }
}

impl fmt::Display for SymplecticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SymplecticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "real" | "real-symplectic" => Ok(SymplecticKind::RealSymplectic),
            "complex" | "complex-symplectic" => Ok(SymplecticKind::ComplexSymplectic),
            "conjugate" | "conjugate-symplectic" => Ok(SymplecticKind::ConjugateSymplectic),
            other => Err(Error::InvalidConfig(format!(
                "unknown symplectic kind {other:?} (expected real, complex or conjugate)"
            ))),
        }
    }
}
