use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::times_i;
use crate::linalg::{log_det, LogDet, SquareMatrix};
use crate::scalar::{RealScalar, Scalar, ScalarKind};
use crate::symplectic::SymplecticKind;

/// The four `N x N` blocks of a `2N x 2N` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockQuad<T> {
    pub a11: SquareMatrix<T>,
    pub a12: SquareMatrix<T>,
    pub a21: SquareMatrix<T>,
    pub a22: SquareMatrix<T>,
}

impl<T: Scalar> BlockQuad<T> {
    pub fn half_dim(&self) -> usize {
        self.a11.n()
    }
}

pub fn split_blocks<T: Scalar>(a: &SquareMatrix<T>) -> Result<BlockQuad<T>> {
    if a.n() % 2 != 0 {
        return Err(Error::OddDimension(a.n()));
    }
    let n = a.n() / 2;
    Ok(BlockQuad {
        a11: a.submatrix(0, 0, n),
        a12: a.submatrix(0, n, n),
        a21: a.submatrix(n, 0, n),
        a22: a.submatrix(n, n, n),
    })
}

pub fn assemble_blocks<T: Scalar>(q: &BlockQuad<T>) -> Result<SquareMatrix<T>> {
    let n = q.a11.n();
    for block in [&q.a12, &q.a21, &q.a22] {
        if block.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: block.n(),
            });
        }
    }
    let mut a = SquareMatrix::zeros(2 * n);
    a.set_submatrix(0, 0, &q.a11);
    a.set_submatrix(0, n, &q.a12);
    a.set_submatrix(n, 0, &q.a21);
    a.set_submatrix(n, n, &q.a22);
    Ok(a)
}

/// `J A J^{-1}`, formed blockwise as `[[A22, -A21], [-A12, A11]]`.
pub fn j_conjugate<T: Scalar>(a: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
    let q = split_blocks(a)?;
    assemble_blocks(&BlockQuad {
        a11: q.a22,
        a12: -&q.a21,
        a21: -&q.a12,
        a22: q.a11,
    })
}

/// The pair `(C, D)` read off from `A + J A J^{-1}` (or its conjugated form).
#[derive(Clone, Debug, PartialEq)]
pub struct BlockPair<T> {
    pub c: SquareMatrix<T>,
    pub d: SquareMatrix<T>,
    pub variant: SymplecticKind,
}

impl<T: Scalar> BlockPair<T> {
    pub fn new(c: SquareMatrix<T>, d: SquareMatrix<T>, variant: SymplecticKind) -> Result<Self> {
        if c.n() != d.n() {
            return Err(Error::DimensionMismatch {
                expected: c.n(),
                found: d.n(),
            });
        }
        Ok(Self { c, d, variant })
    }

    pub fn half_dim(&self) -> usize {
        self.c.n()
    }
}

/// Forms `(C, D)` for `variant`.
///
/// `ComplexSymplectic` conjugates the second block of each sum and requires
/// complex scalars; the other two variants use `C = A11 + A22`, `D = A12 - A21`.
pub fn block_pair<T: Scalar>(a: &SquareMatrix<T>, variant: SymplecticKind) -> Result<BlockPair<T>> {
    let q = split_blocks(a)?;
    let (c, d) = match variant {
        SymplecticKind::RealSymplectic | SymplecticKind::ConjugateSymplectic => {
            (&q.a11 + &q.a22, &q.a12 - &q.a21)
        }
        SymplecticKind::ComplexSymplectic => {
            if T::KIND != ScalarKind::Complex {
                return Err(Error::KindMismatch {
                    expected: ScalarKind::Complex,
                    found: T::KIND,
                });
            }
            (&q.a11 + &q.a22.conjugate(), &q.a12 - &q.a21.conjugate())
        }
    };
    Ok(BlockPair { c, d, variant })
}

/// `[[C, D], [-D, C]]`, or `[[C, D], [-conj(D), conj(C)]]` for the
/// `ComplexSymplectic` variant.
pub fn embed_pair<T: Scalar>(p: &BlockPair<T>) -> SquareMatrix<T> {
    let (lower_left, lower_right) = match p.variant {
        SymplecticKind::ComplexSymplectic => (-&p.d.conjugate(), p.c.conjugate()),
        _ => (-&p.d, p.c.clone()),
    };
    assemble_blocks(&BlockQuad {
        a11: p.c.clone(),
        a12: p.d.clone(),
        a21: lower_left,
        a22: lower_right,
    })
    .expect("pair blocks share a dimension")
}

fn check_split_variant(variant: SymplecticKind) -> Result<()> {
    if variant == SymplecticKind::ComplexSymplectic {
        return Err(Error::InvalidConfig(
            "the C +/- iD split applies to [[C, D], [-D, C]] only".into(),
        ));
    }
    Ok(())
}

/// `(C + iD, C - iD)` promoted to complex scalars.
pub fn split_matrices<T: Scalar>(
    p: &BlockPair<T>,
) -> Result<(SquareMatrix<Complex<T::Real>>, SquareMatrix<Complex<T::Real>>)> {
    check_split_variant(p.variant)?;
    let c = p.c.to_complex();
    let id = times_i(&p.d.to_complex());
    Ok((&c + &id, &c - &id))
}

/// `(det(C + iD), det(C - iD))`, whose product is `det([[C, D], [-D, C]])`.
pub fn unitary_split_det<T: Scalar>(p: &BlockPair<T>) -> Result<(LogDet<T::Real>, LogDet<T::Real>)> {
    let (plus, minus) = split_matrices(p)?;
    Ok((log_det(&plus), log_det(&minus)))
}

/// The three factors `U diag(C + iD, C - iD) U^*` of `[[C, D], [-D, C]]`, with
/// `U = [[I, I], [iI, -iI]] / sqrt(2)`.
#[allow(clippy::type_complexity)]
pub fn unitary_factorization<T: Scalar>(
    p: &BlockPair<T>,
) -> Result<(
    SquareMatrix<Complex<T::Real>>,
    SquareMatrix<Complex<T::Real>>,
    SquareMatrix<Complex<T::Real>>,
)> {
    let (plus, minus) = split_matrices(p)?;
    let n = p.half_dim();
    let r = <T::Real as RealScalar>::of(std::f64::consts::FRAC_1_SQRT_2);
    let one = Complex::new(r, T::Real::zero());
    let i = Complex::new(T::Real::zero(), r);
    let ident = |z: Complex<T::Real>| SquareMatrix::scalar_identity(n, z);
    let left = assemble_blocks(&BlockQuad {
        a11: ident(one),
        a12: ident(one),
        a21: ident(i),
        a22: ident(-i),
    })?;
    let zero = SquareMatrix::zeros(n);
    let middle = assemble_blocks(&BlockQuad {
        a11: plus,
        a12: zero.clone(),
        a21: zero,
        a22: minus,
    })?;
    let right = left.conj_transpose();
    Ok((left, middle, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_gaussian, Rng};
    use crate::symplectic::form_matrix;

    type C = Complex<f64>;

    #[test]
    fn split_of_form_and_identity() {
        for n in 1..4 {
            let j = form_matrix::<f64>(n).unwrap();
            assert_eq!(split_blocks(&j).unwrap().a12, SquareMatrix::identity(n));
            let i = SquareMatrix::<f64>::identity(2 * n);
            assert!(split_blocks(&i).unwrap().a12.is_zero());
        }
    }

    #[test]
    fn split_assemble_round_trip() {
        let a: SquareMatrix<C> = random_gaussian(&mut Rng::new(3), 8);
        assert_eq!(assemble_blocks(&split_blocks(&a).unwrap()).unwrap(), a);
        assert_eq!(
            split_blocks(&SquareMatrix::<f64>::identity(5)),
            Err(Error::OddDimension(5))
        );
    }

    #[test]
    fn j_conjugate_fixed_points() {
        let i = SquareMatrix::<f64>::identity(4);
        assert_eq!(j_conjugate(&i).unwrap(), i);
        let j = form_matrix::<f64>(2).unwrap();
        assert_eq!(j_conjugate(&j).unwrap(), j);
    }

    #[test]
    fn j_conjugate_matches_dense_product() {
        let a: SquareMatrix<f64> = random_gaussian(&mut Rng::new(11), 6);
        let j = form_matrix::<f64>(3).unwrap();
        let dense = &(&j * &a) * &j.transpose();
        assert!(j_conjugate(&a).unwrap().distance(&dense) <= 1e-13);
    }

    #[test]
    fn pairs_of_simple_matrices() {
        let n = 2;
        let j = form_matrix::<f64>(n).unwrap();
        let p = block_pair(&j, SymplecticKind::RealSymplectic).unwrap();
        assert!(p.c.is_zero());
        assert_eq!(p.d, SquareMatrix::scalar_identity(n, 2.0));

        let p = block_pair(&SquareMatrix::<f64>::identity(2 * n), SymplecticKind::RealSymplectic)
            .unwrap();
        assert_eq!(p.c, SquareMatrix::scalar_identity(n, 2.0));
        assert!(p.d.is_zero());

        let phase = C::from_polar(1.0, 0.3);
        let a = SquareMatrix::scalar_identity(2 * n, phase);
        let p = block_pair(&a, SymplecticKind::ConjugateSymplectic).unwrap();
        assert_eq!(p.c, SquareMatrix::scalar_identity(n, phase * 2.0));
        assert!(p.d.is_zero());
    }

    #[test]
    fn complex_variant_needs_complex_scalars() {
        let i = SquareMatrix::<f64>::identity(2);
        assert!(matches!(
            block_pair(&i, SymplecticKind::ComplexSymplectic),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn embed_simple_pairs() {
        let i = SquareMatrix::<f64>::identity(2);
        let o = SquareMatrix::<f64>::zeros(2);
        let p = BlockPair::new(i.clone(), o.clone(), SymplecticKind::RealSymplectic).unwrap();
        assert_eq!(embed_pair(&p), SquareMatrix::identity(4));
        let p = BlockPair::new(o, i, SymplecticKind::RealSymplectic).unwrap();
        assert_eq!(embed_pair(&p), form_matrix(2).unwrap());
    }

    #[test]
    fn complex_embedding_conjugates_lower_row() {
        let c = SquareMatrix::from_diagonal(&[C::new(1.0, 2.0)]);
        let d = SquareMatrix::from_diagonal(&[C::new(3.0, -1.0)]);
        let p = BlockPair::new(c, d, SymplecticKind::ComplexSymplectic).unwrap();
        let m = embed_pair(&p);
        assert_eq!(m[(1, 0)], C::new(-3.0, -1.0));
        assert_eq!(m[(1, 1)], C::new(1.0, -2.0));
    }

    #[test]
    fn split_dets_of_simple_pairs() {
        let p = BlockPair::new(
            SquareMatrix::<f64>::identity(3),
            SquareMatrix::zeros(3),
            SymplecticKind::RealSymplectic,
        )
        .unwrap();
        let (a, b) = unitary_split_det(&p).unwrap();
        assert!(a.distance_to(C::new(1.0, 0.0)) < 1e-15);
        assert!(b.distance_to(C::new(1.0, 0.0)) < 1e-15);

        let p = BlockPair::new(
            SquareMatrix::<f64>::zeros(1),
            SquareMatrix::identity(1),
            SymplecticKind::RealSymplectic,
        )
        .unwrap();
        let (a, b) = unitary_split_det(&p).unwrap();
        assert!(a.distance_to(C::new(0.0, 1.0)) < 1e-15);
        assert!(b.distance_to(C::new(0.0, -1.0)) < 1e-15);
        assert!((a * b).distance_to(C::new(1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn split_rejects_complex_variant() {
        let c = SquareMatrix::<C>::identity(2);
        let p = BlockPair::new(c.clone(), c, SymplecticKind::ComplexSymplectic).unwrap();
        assert!(unitary_split_det(&p).is_err());
    }

    #[test]
    fn unitary_factorization_reproduces_embedding() {
        let mut rng = Rng::new(5);
        let c: SquareMatrix<f64> = random_gaussian(&mut rng, 4);
        let d: SquareMatrix<f64> = random_gaussian(&mut rng, 4);
        let p = BlockPair::new(c, d, SymplecticKind::RealSymplectic).unwrap();
        let (u, m, v) = unitary_factorization(&p).unwrap();
        let product = &(&u * &m) * &v;
        assert!(product.distance(&embed_pair(&p).to_complex()) < 1e-13);
        let uu = &u * &v;
        assert!(uu.distance(&SquareMatrix::identity(8)) < 1e-15);
    }
}
