use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::linalg::logdet::LogDet;
use crate::linalg::matrix::SquareMatrix;
use crate::scalar::{RealScalar, Scalar};

/// Multiplier on `n * eps` in the reconstruction bound
/// `||P a - L U||_F <= RECONSTRUCTION_KAPPA * n * eps * ||a||_F`.
///
/// Partial pivoting keeps `|l_ij| <= 1`; the constant absorbs the growth
/// factor observed on Gaussian inputs up to n = 64.
pub const RECONSTRUCTION_KAPPA: f64 = 8.0;

/// LU factorization with partial pivoting, `P a = L U`.
///
/// `L` (unit diagonal, strictly below) and `U` (on and above the diagonal) are
/// packed into one matrix. Row `i` of `P a` is row `perm[i]` of `a`.
#[derive(Clone, Debug)]
pub struct LuFactorization<T> {
    packed: SquareMatrix<T>,
    perm: Vec<usize>,
    swap_count: usize,
    singular: bool,
}

impl<T: Scalar> LuFactorization<T> {
    /// Factorizes `a`. Pivots are chosen by largest modulus, ties going to the
    /// lowest row index. A column with no nonzero pivot marks the factorization
    /// singular and elimination moves on to the next column.
    pub fn new(a: &SquareMatrix<T>) -> Self {
        let n = a.n();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swap_count = 0;
        let mut singular = false;

        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_abs = lu[(k, k)].modulus();
            for i in k + 1..n {
                let v = lu[(i, k)].modulus();
                if v > pivot_abs {
                    pivot_abs = v;
                    pivot_row = i;
                }
            }
            if pivot_abs == T::Real::zero() {
                singular = true;
                continue;
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
                swap_count += 1;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let ukj = lu[(k, j)];
                    lu[(i, j)] -= factor * ukj;
                }
            }
        }

        Self {
            packed: lu,
            perm,
            swap_count,
            singular,
        }
    }

    pub fn n(&self) -> usize {
        self.packed.n()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn swap_count(&self) -> usize {
        self.swap_count
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Unit lower-triangular factor.
    pub fn lower(&self) -> SquareMatrix<T> {
        SquareMatrix::from_fn(self.n(), |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.packed[(i, j)],
            std::cmp::Ordering::Equal => T::one(),
            std::cmp::Ordering::Less => T::zero(),
        })
    }

    /// Upper-triangular factor.
    pub fn upper(&self) -> SquareMatrix<T> {
        SquareMatrix::from_fn(self.n(), |i, j| {
            if i <= j {
                self.packed[(i, j)]
            } else {
                T::zero()
            }
        })
    }

    /// Applies the row permutation: returns `P m`.
    pub fn permute_rows(&self, m: &SquareMatrix<T>) -> SquareMatrix<T> {
        SquareMatrix::from_fn(m.n(), |i, j| m[(self.perm[i], j)])
    }

    /// `||P a - L U||_F` for the matrix `a` this factorization came from.
    pub fn reconstruction_residual(&self, a: &SquareMatrix<T>) -> T::Real {
        let lu = &self.lower() * &self.upper();
        self.permute_rows(a).distance(&lu)
    }

    /// Upper limit for [`reconstruction_residual`](Self::reconstruction_residual).
    pub fn reconstruction_bound(&self, a: &SquareMatrix<T>) -> T::Real {
        T::Real::of(RECONSTRUCTION_KAPPA)
            * T::Real::of(self.n() as f64)
            * T::Real::epsilon()
            * a.frobenius_norm()
    }

    pub fn log_det(&self) -> LogDet<T::Real> {
        if self.singular {
            return LogDet::zero();
        }
        let mut det = if self.swap_count % 2 == 0 {
            LogDet::one()
        } else {
            LogDet::from_scalar(-T::Real::one())
        };
        for i in 0..self.n() {
            det = det * LogDet::from_scalar(self.packed[(i, i)]);
        }
        det
    }

    /// Solves `a x = rhs` column by column.
    pub fn solve(&self, rhs: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
        let n = self.n();
        if rhs.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rhs.n(),
            });
        }
        if self.singular {
            return Err(Error::Singular);
        }
        let mut x = self.permute_rows(rhs);
        for col in 0..n {
            for i in 0..n {
                let mut s = x[(i, col)];
                for k in 0..i {
                    s -= self.packed[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, col)];
                for k in i + 1..n {
                    s -= self.packed[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s / self.packed[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<SquareMatrix<T>> {
        self.solve(&SquareMatrix::identity(self.n()))
    }
}

/// Determinant of `a` in log-scaled form.
pub fn log_det<T: Scalar>(a: &SquareMatrix<T>) -> LogDet<T::Real> {
    LuFactorization::new(a).log_det()
}

/// `a^{-1}`, or [`Error::Singular`].
pub fn inverse<T: Scalar>(a: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
    LuFactorization::new(a).inverse()
}

/// Cheap condition estimate `||a||_F ||a^{-1}||_F` (an upper bound on the
/// 2-norm condition number). Infinite for singular input.
pub fn condition_estimate<T: Scalar>(a: &SquareMatrix<T>) -> T::Real {
    match inverse(a) {
        Ok(inv) => a.frobenius_norm() * inv.frobenius_norm(),
        Err(_) => T::Real::infinity(),
    }
}
