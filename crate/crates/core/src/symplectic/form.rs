use num_traits::{Float, One};

use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::scalar::{RealScalar, Scalar};
use crate::symplectic::SymplecticKind;

/// The standard skew form `J = [[O, I_N], [-I_N, O]]` of half-dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    half_dim: usize,
}

impl SymplecticForm {
    pub fn new(half_dim: usize) -> Result<Self> {
        if half_dim == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(Self { half_dim })
    }

    /// Form matching a `2N x 2N` matrix.
    pub fn for_dim(dim: usize) -> Result<Self> {
        if dim % 2 != 0 {
            return Err(Error::OddDimension(dim));
        }
        Self::new(dim / 2)
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn dim(&self) -> usize {
        2 * self.half_dim
    }

    pub fn matrix<T: Scalar>(&self) -> SquareMatrix<T> {
        let n = self.half_dim;
        let mut j = SquareMatrix::zeros(2 * n);
        for i in 0..n {
            j[(i, n + i)] = T::one();
            j[(n + i, i)] = -T::one();
        }
        j
    }

    /// `J^{-1} = J^T = -J`.
    pub fn inverse<T: Scalar>(&self) -> SquareMatrix<T> {
        self.matrix::<T>().transpose()
    }

    /// `||J||_F = sqrt(2N)`.
    pub fn frobenius_norm<R: RealScalar>(&self) -> R {
        R::of(self.dim() as f64).sqrt()
    }
}

/// `J` for half-dimension `n`.
pub fn form_matrix<T: Scalar>(n: usize) -> Result<SquareMatrix<T>> {
    Ok(SymplecticForm::new(n)?.matrix())
}

fn form_residual<T: Scalar>(a: &SquareMatrix<T>, left: SquareMatrix<T>) -> Result<T::Real> {
    let form = SymplecticForm::for_dim(a.n())?;
    let j = form.matrix::<T>();
    let product = &(&left * &j) * a;
    Ok(product.distance(&j) / form.frobenius_norm())
}

/// `||A^T J A - J||_F / ||J||_F`.
pub fn symplectic_residual<T: Scalar>(a: &SquareMatrix<T>) -> Result<T::Real> {
    form_residual(a, a.transpose())
}

/// `||A^* J A - J||_F / ||J||_F`.
pub fn conjugate_symplectic_residual<T: Scalar>(a: &SquareMatrix<T>) -> Result<T::Real> {
    form_residual(a, a.conj_transpose())
}

/// Residual of the membership predicate matching `kind`.
pub fn membership_residual<T: Scalar>(a: &SquareMatrix<T>, kind: SymplecticKind) -> Result<T::Real> {
    if kind.uses_conjugate_transpose() {
        conjugate_symplectic_residual(a)
    } else {
        symplectic_residual(a)
    }
}

/// `tol * max(1, ||A||_F^2)`: rounding in `A^T J A` grows with `||A||^2`.
pub fn membership_threshold<T: Scalar>(a: &SquareMatrix<T>, tol: f64) -> T::Real {
    let norm = a.frobenius_norm();
    T::Real::of(tol) * (norm * norm).max(T::Real::one())
}

/// Returns the membership residual, or [`Error::NotMember`] if it exceeds the
/// scaled threshold.
pub fn check_membership<T: Scalar>(
    a: &SquareMatrix<T>,
    kind: SymplecticKind,
    tol: f64,
) -> Result<T::Real> {
    let residual = membership_residual(a, kind)?;
    let threshold = membership_threshold(a, tol);
    if !(residual <= threshold) {
        return Err(Error::NotMember {
            residual: residual.as_f64(),
            tolerance: threshold.as_f64(),
        });
    }
    Ok(residual)
}
