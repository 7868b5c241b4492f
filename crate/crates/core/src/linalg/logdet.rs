use std::fmt;
use std::ops::Mul;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{RealScalar, Scalar};

/// A determinant held as `exp(log_magnitude) * phase`.
///
/// `phase` always has unit modulus; it is renormalized after every product.
/// For real matrices the phase is exactly `+1` or `-1`. A singular matrix has
/// `log_magnitude = -inf` and phase `1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDet<R> {
    pub log_magnitude: R,
    pub phase: Complex<R>,
}

impl<R: RealScalar> LogDet<R> {
    pub fn one() -> Self {
        Self {
            log_magnitude: R::zero(),
            phase: Complex::one(),
        }
    }

    pub fn zero() -> Self {
        Self {
            log_magnitude: R::neg_infinity(),
            phase: Complex::one(),
        }
    }

    pub fn from_scalar<T: Scalar<Real = R>>(x: T) -> Self {
        let m = x.modulus();
        if m == R::zero() {
            return Self::zero();
        }
        Self {
            log_magnitude: m.ln(),
            phase: unit(x.to_complex() / m),
        }
    }

    /// Builds a log-determinant from a magnitude logarithm and an arbitrary
    /// nonzero phase, which is normalized.
    pub fn from_parts(log_magnitude: R, phase: Complex<R>) -> Self {
        Self {
            log_magnitude,
            phase: unit(phase),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_magnitude == R::neg_infinity()
    }

    /// `|det|`; may overflow to infinity or underflow to zero.
    pub fn magnitude(&self) -> R {
        self.log_magnitude.exp()
    }

    /// `det` as a plain complex number; may overflow.
    pub fn value(&self) -> Complex<R> {
        if self.is_zero() {
            return Complex::zero();
        }
        self.phase * self.magnitude()
    }

    pub fn conj(&self) -> Self {
        Self {
            log_magnitude: self.log_magnitude,
            phase: self.phase.conj(),
        }
    }

    pub fn recip(&self) -> Self {
        Self {
            log_magnitude: -self.log_magnitude,
            phase: self.phase.conj(),
        }
    }

    pub fn powi(&self, k: i32) -> Self {
        Self::from_parts(self.log_magnitude * R::of(k as f64), self.phase.powi(k))
    }

    /// `|det|^2` as a log-determinant with phase one.
    pub fn modulus_sqr(&self) -> Self {
        Self {
            log_magnitude: self.log_magnitude * R::of(2.0),
            phase: Complex::one(),
        }
    }

    /// Angle of the phase in `(-pi, pi]`.
    pub fn arg(&self) -> R {
        self.phase.arg()
    }

    /// `|a - b| / max(|a|, |b|)`, computed in log space so it never overflows.
    ///
    /// Two zero determinants are at distance 0; zero against nonzero is 1.
    pub fn relative_distance(&self, other: &Self) -> R {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return R::zero(),
            (true, false) | (false, true) => return R::one(),
            _ => {}
        }
        let (big, small) = if self.log_magnitude >= other.log_magnitude {
            (self, other)
        } else {
            (other, self)
        };
        let ratio = small.phase * big.phase.conj() * (small.log_magnitude - big.log_magnitude).exp();
        (Complex::<R>::one() - ratio).norm()
    }

    /// Unsigned angle between the two phases, in `[0, pi]`.
    pub fn phase_angle_to(&self, other: &Self) -> R {
        (self.phase * other.phase.conj()).arg().abs()
    }

    /// `|det - target|` for a target value of order one.
    pub fn distance_to(&self, target: Complex<R>) -> R {
        (self.value() - target).norm()
    }
}

impl<R: RealScalar> Mul for LogDet<R> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self {
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
            phase: unit(self.phase * rhs.phase),
        }
    }
}

impl<R: RealScalar> fmt::Display for LogDet<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.value();
        if v.re.is_finite() && v.im.is_finite() && self.log_magnitude.abs() < R::of(600.0) {
            if v.im == R::zero() {
                write!(f, "{:e}", v.re)
            } else {
                write!(f, "{:e}{:+e}i", v.re, v.im)
            }
        } else {
            write!(
                f,
                "exp({:e})*({:e}{:+e}i)",
                self.log_magnitude, self.phase.re, self.phase.im
            )
        }
    }
}

/// Rescales a nonzero complex number to unit modulus. Exact ±1 stays exact.
pub(crate) fn unit<R: RealScalar>(z: Complex<R>) -> Complex<R> {
    if z.im == R::zero() {
        return Complex::new(z.re.signum(), R::zero());
    }
    let m = z.norm();
    Complex::new(z.re / m, z.im / m)
}
