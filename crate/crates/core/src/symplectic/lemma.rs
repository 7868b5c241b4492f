use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::linalg::matrix::shifted;
use crate::linalg::{condition_estimate, log_det, LogDet, LuFactorization, SquareMatrix};
use crate::scalar::Scalar;
use crate::symplectic::blocks::{assemble_blocks, BlockQuad};

/// `[[C, D], [-conj(D), conj(C)]]`.
pub fn lemma_matrix<T: Scalar>(c: &SquareMatrix<T>, d: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
    assemble_blocks(&BlockQuad {
        a11: c.clone(),
        a12: d.clone(),
        a21: -&d.conjugate(),
        a22: c.conjugate(),
    })
}

/// Determinant of [`lemma_matrix`]. It is real and nonnegative for every
/// `C`, `D`; numerically the phase sits within rounding of `+1`.
pub fn lemma_det<T: Scalar>(c: &SquareMatrix<T>, d: &SquareMatrix<T>) -> Result<LogDet<T::Real>> {
    Ok(log_det(&lemma_matrix(c, d)?))
}

/// How far a determinant is from the nonnegative real axis, relative to
/// `exp(log_scale)`: returns `(|Im det|, max(0, -Re det)) / exp(log_scale)`.
pub fn nonnegativity_defects<R: crate::RealScalar>(det: &LogDet<R>, log_scale: R) -> (R, R) {
    if det.is_zero() {
        return (R::zero(), R::zero());
    }
    let rel = (det.log_magnitude - log_scale).exp();
    (
        det.phase.im.abs() * rel,
        (-det.phase.re).max(R::zero()) * rel,
    )
}

/// Numerical transcript of the reduction `E = C^{-1} D`.
///
/// With `C` invertible, multiplying the lemma matrix on the left by
/// `diag(C^{-1}, conj(C)^{-1})` gives `[[I, E], [-conj(E), I]]`, whose
/// determinant equals `det(conj(E) E + I)`.
#[derive(Clone, Debug)]
pub struct LemmaProbe<T: Scalar> {
    pub c: SquareMatrix<T>,
    pub d: SquareMatrix<T>,
    /// `C^{-1} D`; absent when `C` is singular.
    pub e: Option<SquareMatrix<T>>,
    pub lemma_det: LogDet<T::Real>,
    pub det_c: LogDet<T::Real>,
    /// `||C||_F ||C^{-1}||_F`; infinite for singular `C`.
    pub condition: T::Real,
    /// `det([[I, E], [-conj(E), I]])`.
    pub reduced_det: Option<LogDet<T::Real>>,
    /// `det(conj(E) E + I)`.
    pub gram_det: Option<LogDet<T::Real>>,
    /// `||C E - D||_F / (||C||_F ||E||_F + ||D||_F)`.
    pub ce_residual: Option<T::Real>,
    /// Relative Frobenius distance between the left-multiplied lemma matrix
    /// and `[[I, E], [-conj(E), I]]`.
    pub premultiply_residual: Option<T::Real>,
    /// Relative distance between `det(lemma)` and `det(C) det(conj C) det([[I, E], [-conj E, I]])`.
    pub block_identity_residual: Option<T::Real>,
    /// Relative distance between `det([[I, E], [-conj E, I]])` and `det(conj(E) E + I)`.
    pub schur_identity_residual: Option<T::Real>,
}

impl<T: Scalar> LemmaProbe<T> {
    pub fn is_reduced(&self) -> bool {
        self.e.is_some()
    }
}

pub fn lemma_reduction<T: Scalar>(c: &SquareMatrix<T>, d: &SquareMatrix<T>) -> Result<LemmaProbe<T>> {
    if c.n() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            found: d.n(),
        });
    }
    let n = c.n();
    let lemma = lemma_matrix(c, d)?;
    let lemma_det = log_det(&lemma);
    let lu = LuFactorization::new(c);
    let det_c = lu.log_det();

    let mut probe = LemmaProbe {
        c: c.clone(),
        d: d.clone(),
        e: None,
        lemma_det,
        det_c,
        condition: T::Real::infinity(),
        reduced_det: None,
        gram_det: None,
        ce_residual: None,
        premultiply_residual: None,
        block_identity_residual: None,
        schur_identity_residual: None,
    };
    if lu.is_singular() {
        return Ok(probe);
    }

    let e = lu.solve(d)?;
    let e_bar = e.conjugate();
    probe.condition = condition_estimate(c);

    let ce = c * &e;
    let denom = c.frobenius_norm() * e.frobenius_norm() + d.frobenius_norm();
    probe.ce_residual = Some(if denom == T::Real::zero() {
        ce.distance(d)
    } else {
        ce.distance(d) / denom
    });

    let ident = SquareMatrix::<T>::identity(n);
    let reduced = assemble_blocks(&BlockQuad {
        a11: ident.clone(),
        a12: e.clone(),
        a21: -&e_bar,
        a22: ident,
    })?;

    let c_inv = lu.inverse()?;
    let zero = SquareMatrix::zeros(n);
    let left = assemble_blocks(&BlockQuad {
        a11: c_inv.clone(),
        a12: zero.clone(),
        a21: zero,
        a22: c_inv.conjugate(),
    })?;
    probe.premultiply_residual = Some((&left * &lemma).distance(&reduced) / reduced.frobenius_norm());

    let reduced_det = log_det(&reduced);
    let gram_det = log_det(&shifted(&(&e_bar * &e), T::one()));
    probe.block_identity_residual =
        Some(lemma_det.relative_distance(&(det_c * det_c.conj() * reduced_det)));
    probe.schur_identity_residual = Some(reduced_det.relative_distance(&gram_det));
    probe.reduced_det = Some(reduced_det);
    probe.gram_det = Some(gram_det);
    probe.e = Some(e);
    Ok(probe)
}
