use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::matrix::SquareMatrix;
use crate::scalar::{RealScalar, Scalar};

/// Seeded random stream.
///
/// Output is a pure function of the seed and the call sequence. Independent
/// streams for parallel work come from [`Rng::child`], which derives a new
/// seed from `(seed, index)` without consuming from the parent.
#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Seed of the `index`-th child stream.
    pub fn child_seed(seed: u64, index: u64) -> u64 {
        splitmix64(seed ^ splitmix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)))
    }

    pub fn child(&self, index: u64) -> Rng {
        Rng::new(Self::child_seed(self.seed, index))
    }

    /// Standard normal draw.
    pub fn gaussian<R: RealScalar>(&mut self) -> R {
        let x: f64 = self.inner.sample(StandardNormal);
        R::of(x)
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform<R: RealScalar>(&mut self) -> R {
        R::of(self.inner.random::<f64>())
    }

    /// Uniform index in `0..bound`.
    pub fn index(&mut self, bound: usize) -> usize {
        self.inner.random_range(0..bound)
    }

    /// Scalar with independent standard normal real (and imaginary) parts.
    pub fn gaussian_scalar<T: Scalar>(&mut self) -> T {
        let re = self.gaussian();
        match T::KIND {
            crate::ScalarKind::Real => T::from_real(re),
            crate::ScalarKind::Complex => T::from_parts(re, self.gaussian()),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// n x n matrix of i.i.d. standard normal entries (per real component).
pub fn random_gaussian<T: Scalar>(rng: &mut Rng, n: usize) -> SquareMatrix<T> {
    SquareMatrix::from_fn(n, |_, _| rng.gaussian_scalar())
}
