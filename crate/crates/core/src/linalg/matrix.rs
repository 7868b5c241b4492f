use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar, ScalarKind};

/// Dense n x n matrix stored row-major.
///
/// Operator impls (`&a * &b`, `&a + &b`) panic on a dimension mismatch; the
/// `matmul`/`add_scaled` methods return an error instead.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar_identity(n, T::one())
    }

    /// `value * I_n`.
    pub fn scalar_identity(n: usize, value: T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = value;
        }
        m
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from row-major entries; `data.len()` must equal `n * n`.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[&[T]]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ScalarKind {
        T::KIND
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Triple-loop product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let lhs = self.row(i);
            let dst = &mut out.data[i * n..(i + 1) * n];
            for (k, &aik) in lhs.iter().enumerate() {
                if aik == T::zero() {
                    continue;
                }
                for (d, &bkj) in dst.iter_mut().zip(other.row(k)) {
                    *d += aik * bkj;
                }
            }
        }
        Ok(out)
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, other: &Self, alpha: T) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + alpha * b)
                .collect(),
        })
    }

    pub fn scale(&self, alpha: T) -> Self {
        self.map(|x| alpha * x)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn conjugate(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm, scaled to avoid overflow in the sum of squares.
    pub fn frobenius_norm(&self) -> T::Real {
        let max = self
            .data
            .iter()
            .map(|x| x.modulus())
            .fold(T::Real::zero(), Float::max);
        if max == T::Real::zero() || !max.is_finite() {
            return max;
        }
        let sum: T::Real = self
            .data
            .iter()
            .map(|&x| (x.modulus() / max).powi(2))
            .sum();
        max * sum.sqrt()
    }

    /// Natural log of the Hadamard bound, `sum_i log ||row_i||_2`.
    ///
    /// Any determinant of this matrix satisfies `|det| <= exp(log_hadamard_bound)`.
    pub fn log_hadamard_bound(&self) -> T::Real {
        (0..self.n)
            .map(|i| {
                let row: T::Real = self.row(i).iter().map(|x| x.modulus_sqr()).sum();
                row.ln() / T::Real::of(2.0)
            })
            .sum()
    }

    pub fn max_abs(&self) -> T::Real {
        self.data
            .iter()
            .map(|x| x.modulus())
            .fold(T::Real::zero(), Float::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re().is_finite() && x.im().is_finite())
    }

    pub fn to_complex(&self) -> SquareMatrix<Complex<T::Real>> {
        self.map(Scalar::to_complex)
    }

    /// Copies the `size x size` block whose top-left corner is `(row, col)`.
    pub fn submatrix(&self, row: usize, col: usize, size: usize) -> Self {
        Self::from_fn(size, |i, j| self[(row + i, col + j)])
    }

    pub fn set_submatrix(&mut self, row: usize, col: usize, block: &Self) {
        for i in 0..block.n {
            for j in 0..block.n {
                self[(row + i, col + j)] = block[(i, j)];
            }
        }
    }

    /// `||self - other||_F`.
    pub fn distance(&self, other: &Self) -> T::Real {
        (self - other).frobenius_norm()
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> Mul for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;

    fn mul(self, rhs: Self) -> SquareMatrix<T> {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl<T: Scalar> Add for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;

    fn add(self, rhs: Self) -> SquareMatrix<T> {
        self.add_scaled(rhs, T::one())
            .expect("matrix sum dimension mismatch")
    }
}

impl<T: Scalar> Sub for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;

    fn sub(self, rhs: Self) -> SquareMatrix<T> {
        self.add_scaled(rhs, -T::one())
            .expect("matrix difference dimension mismatch")
    }
}

impl<T: Scalar> Neg for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;

    fn neg(self) -> SquareMatrix<T> {
        self.map(|x| -x)
    }
}

/// Multiplies a complex matrix by the imaginary unit.
pub fn times_i<R: RealScalar>(a: &SquareMatrix<Complex<R>>) -> SquareMatrix<Complex<R>> {
    a.map(|z| Complex::new(-z.im, z.re))
}

/// `a + alpha * I`.
pub fn shifted<T: Scalar>(a: &SquareMatrix<T>, alpha: T) -> SquareMatrix<T> {
    let mut out = a.clone();
    for i in 0..a.n() {
        out[(i, i)] += alpha;
    }
    out
}

impl<T: Scalar> SquareMatrix<T> {
    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == T::zero())
    }
}

impl<T: Scalar> Default for SquareMatrix<T> {
    fn default() -> Self {
        Self::zeros(0)
    }
}
