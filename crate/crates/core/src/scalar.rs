//! Scalar abstraction over the two fields the library works in.
//!
//! Matrices are generic over [`Scalar`], which is implemented for `f32`, `f64`
//! and `Complex<f32>`/`Complex<f64>`. The real part type of a scalar is its
//! [`RealScalar`], which carries logs, square roots and parsing.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, ToPrimitive};

/// Which field a scalar type lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Real,
    Complex,
}

impl ScalarKind {
    /// Single-letter tag used by the matrix text format.
    pub fn tag(self) -> char {
        match self {
            ScalarKind::Real => 'R',
            ScalarKind::Complex => 'C',
        }
    }
}

/// Floating point real type: f32 or f64. Every real type is also a
/// [`Scalar`] whose real part is itself.
pub trait RealScalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Default
    + Sum
    + NumAssign
    + Scalar<Real = Self>
{
    /// Lossy conversion from f64, used for constants and tolerances.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl RealScalar for f32 {}
impl RealScalar for f64 {}

/// Element type of a [`SquareMatrix`](crate::SquareMatrix).
pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
    + Send
    + Sync
    + 'static
{
    type Real: RealScalar;

    const KIND: ScalarKind;

    fn from_real(re: Self::Real) -> Self;

    /// Builds a scalar from its parts. Real types drop `im`.
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;

    fn re(self) -> Self::Real;

    fn im(self) -> Self::Real;

    fn conj(self) -> Self;

    /// |x|, computed without intermediate overflow for complex values.
    fn modulus(self) -> Self::Real;

    fn modulus_sqr(self) -> Self::Real {
        let (re, im) = (self.re(), self.im());
        re * re + im * im
    }

    fn to_complex(self) -> Complex<Self::Real> {
        Complex::new(self.re(), self.im())
    }
}

macro_rules! impl_real_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            type Real = $t;

            const KIND: ScalarKind = ScalarKind::Real;

            #[inline]
            fn from_real(re: $t) -> Self {
                re
            }

            #[inline]
            fn from_parts(re: $t, _im: $t) -> Self {
                re
            }

            #[inline]
            fn re(self) -> $t {
                self
            }

            #[inline]
            fn im(self) -> $t {
                0.0
            }

            #[inline]
            fn conj(self) -> Self {
                self
            }

            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }

            #[inline]
            fn modulus_sqr(self) -> $t {
                self * self
            }
        }
    };
}

impl_real_scalar!(f32);
impl_real_scalar!(f64);

impl<R: RealScalar> Scalar for Complex<R> {
    type Real = R;

    const KIND: ScalarKind = ScalarKind::Complex;

    #[inline]
    fn from_real(re: R) -> Self {
        Complex::new(re, R::zero())
    }

    #[inline]
    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
    }

    #[inline]
    fn re(self) -> R {
        self.re
    }

    #[inline]
    fn im(self) -> R {
        self.im
    }

    #[inline]
    fn conj(self) -> Self {
        Complex::conj(&self)
    }

    #[inline]
    fn modulus(self) -> R {
        self.norm()
    }

    #[inline]
    fn to_complex(self) -> Complex<R> {
        self
    }
}
