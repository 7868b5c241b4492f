//! Seeded sampling of symplectic and conjugate symplectic matrices.
//!
//! Samples are products of elementary factors whose membership holds in
//! closed form:
//!
//! * shears `[[I, O], [S, I]]` and `[[I, S], [O, I]]` with `S` symmetric
//!   (Hermitian for the conjugate group),
//! * block diagonals `[[P, O], [O, P^{-T}]]` (`P^{-*}` for the conjugate group),
//! * the form `J` itself,
//! * scalar phases `e^{i theta} I` (conjugate group only).
//!
//! The resulting distribution is not Haar; it is a rich family of valid
//! group elements with bounded conditioning.

use std::str::FromStr;

use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};
use crate::linalg::{inverse, random_gaussian, Rng, SquareMatrix};
use crate::scalar::{RealScalar, Scalar, ScalarKind};
use crate::symplectic::blocks::{assemble_blocks, BlockQuad};
use crate::symplectic::{form_matrix, SymplecticKind};

pub const DEFAULT_NUM_FACTORS: usize = 12;
pub const DEFAULT_CONDITION_CAP: f64 = 20.0;
pub const DEFAULT_FACTOR_SCALE: f64 = 1.0;
const MAX_ATTEMPTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    ShearLower,
    ShearUpper,
    DiagBlock,
    Form,
    Phase,
}

impl FactorKind {
    const GROUP: [FactorKind; 4] = [
        FactorKind::ShearLower,
        FactorKind::ShearUpper,
        FactorKind::DiagBlock,
        FactorKind::Form,
    ];
    const CONJUGATE_GROUP: [FactorKind; 5] = [
        FactorKind::ShearLower,
        FactorKind::ShearUpper,
        FactorKind::DiagBlock,
        FactorKind::Form,
        FactorKind::Phase,
    ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub half_dim: usize,
    pub num_factors: usize,
    /// Entry scale of shear and diagonal perturbation blocks; entries are
    /// `factor_scale / sqrt(N)` times a standard normal.
    pub factor_scale: f64,
    /// Upper bound on the 2-norm condition number of every factor.
    pub condition_cap: f64,
    pub seed: u64,
    pub target: SymplecticKind,
    /// Fixed factor sequence; overrides `num_factors` and random selection.
    pub schedule: Option<Vec<FactorKind>>,
}

impl GeneratorConfig {
    pub fn new(target: SymplecticKind, half_dim: usize, seed: u64) -> Self {
        Self {
            half_dim,
            num_factors: DEFAULT_NUM_FACTORS,
            factor_scale: DEFAULT_FACTOR_SCALE,
            condition_cap: DEFAULT_CONDITION_CAP,
            seed,
            target,
            schedule: None,
        }
    }

    pub fn validate<T: Scalar>(&self) -> Result<()> {
        if self.half_dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let factors = self.schedule.as_ref().map_or(self.num_factors, Vec::len);
        if factors == 0 {
            return Err(Error::InvalidConfig("at least one factor is required".into()));
        }
        if !(self.factor_scale > 0.0 && self.factor_scale.is_finite()) {
            return Err(Error::InvalidConfig("factor_scale must be positive".into()));
        }
        if !(self.condition_cap > 1.0) {
            return Err(Error::InvalidConfig("condition_cap must exceed 1".into()));
        }
        let needed = match self.target {
            SymplecticKind::RealSymplectic => ScalarKind::Real,
            _ => ScalarKind::Complex,
        };
        if T::KIND != needed {
            return Err(Error::KindMismatch {
                expected: needed,
                found: T::KIND,
            });
        }
        if let Some(schedule) = &self.schedule {
            if self.target != SymplecticKind::ConjugateSymplectic
                && schedule.contains(&FactorKind::Phase)
            {
                return Err(Error::InvalidConfig(
                    "phase factors belong to the conjugate symplectic group only".into(),
                ));
            }
        }
        Ok(())
    }
}

fn symmetrize<T: Scalar>(s: &SquareMatrix<T>, target: SymplecticKind) -> SquareMatrix<T> {
    let other = if target.uses_conjugate_transpose() {
        s.conj_transpose()
    } else {
        s.transpose()
    };
    (s + &other).scale(T::from_real(T::Real::of(0.5)))
}

fn shear<T: Scalar>(s: &SquareMatrix<T>, target: SymplecticKind, lower: bool) -> SquareMatrix<T> {
    let n = s.n();
    let s = symmetrize(s, target);
    let zero = SquareMatrix::zeros(n);
    let (a12, a21) = if lower { (zero, s) } else { (s, zero) };
    assemble_blocks(&BlockQuad {
        a11: SquareMatrix::identity(n),
        a12,
        a21,
        a22: SquareMatrix::identity(n),
    })
    .expect("blocks share a dimension")
}

/// `[[I, O], [S, I]]` after symmetrizing `S` for `target`.
pub fn shear_lower<T: Scalar>(s: &SquareMatrix<T>, target: SymplecticKind) -> SquareMatrix<T> {
    shear(s, target, true)
}

/// `[[I, S], [O, I]]` after symmetrizing `S` for `target`.
pub fn shear_upper<T: Scalar>(s: &SquareMatrix<T>, target: SymplecticKind) -> SquareMatrix<T> {
    shear(s, target, false)
}

/// `[[P, O], [O, P^{-T}]]`, or `[[P, O], [O, P^{-*}]]` for the conjugate group.
pub fn diag_block<T: Scalar>(p: &SquareMatrix<T>, target: SymplecticKind) -> Result<SquareMatrix<T>> {
    let p_inv = inverse(p)?;
    let lower = if target.uses_conjugate_transpose() {
        p_inv.conj_transpose()
    } else {
        p_inv.transpose()
    };
    let zero = SquareMatrix::zeros(p.n());
    assemble_blocks(&BlockQuad {
        a11: p.clone(),
        a12: zero.clone(),
        a21: zero,
        a22: lower,
    })
}

/// `e^{i theta} I_{2N}`; conjugate symplectic with determinant `e^{2iN theta}`.
pub fn phase_factor<T: Scalar>(theta: T::Real, half_dim: usize) -> SquareMatrix<T> {
    SquareMatrix::scalar_identity(2 * half_dim, T::from_parts(theta.cos(), theta.sin()))
}

/// `[[C, D], [-D, C]]` for real `C`, `D`. No group membership is implied.
pub fn embed_orthogonal_pair<R: RealScalar>(
    c: &SquareMatrix<R>,
    d: &SquareMatrix<R>,
) -> Result<SquareMatrix<R>> {
    if c.n() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: c.n(),
            found: d.n(),
        });
    }
    assemble_blocks(&BlockQuad {
        a11: c.clone(),
        a12: d.clone(),
        a21: -d,
        a22: c.clone(),
    })
}

fn clamp_frobenius<T: Scalar>(m: SquareMatrix<T>, bound: T::Real) -> SquareMatrix<T> {
    let norm = m.frobenius_norm();
    if norm > bound {
        m.scale(T::from_real(bound / norm))
    } else {
        m
    }
}

fn scaled_gaussian<T: Scalar>(rng: &mut Rng, config: &GeneratorConfig) -> SquareMatrix<T> {
    let n = config.half_dim;
    let scale = T::Real::of(config.factor_scale / (n as f64).sqrt());
    random_gaussian::<T>(rng, n).scale(T::from_real(scale))
}

/// Draws one factor of the given kind.
///
/// Shear blocks are clamped to `||S||_F <= sqrt(cap) - 1/sqrt(cap)`, which
/// bounds the shear's condition number by `cap`. Diagonal blocks use
/// `P = I + E` with `||E||_F <= (cap - 1)/(cap + 1)`, so that
/// `cond(P) <= cap` and `P` is never singular.
pub fn sample_factor<T: Scalar>(
    kind: FactorKind,
    config: &GeneratorConfig,
    rng: &mut Rng,
) -> Result<SquareMatrix<T>> {
    let n = config.half_dim;
    let cap = config.condition_cap;
    match kind {
        FactorKind::ShearLower | FactorKind::ShearUpper => {
            let bound = T::Real::of(cap.sqrt() - 1.0 / cap.sqrt());
            let s = clamp_frobenius(symmetrize(&scaled_gaussian(rng, config), config.target), bound);
            Ok(shear(&s, config.target, kind == FactorKind::ShearLower))
        }
        FactorKind::DiagBlock => {
            let bound = T::Real::of((cap - 1.0) / (cap + 1.0));
            let mut last = Error::Singular;
            for _ in 0..MAX_ATTEMPTS {
                let e = clamp_frobenius(scaled_gaussian::<T>(rng, config), bound);
                let p = &SquareMatrix::identity(n) + &e;
                match diag_block(&p, config.target) {
                    Ok(m) => return Ok(m),
                    Err(err) => last = err,
                }
            }
            Err(Error::GenerationFailed {
                attempts: MAX_ATTEMPTS,
                reason: last.to_string(),
            })
        }
        FactorKind::Form => form_matrix(n),
        FactorKind::Phase => {
            if T::KIND != ScalarKind::Complex {
                return Err(Error::KindMismatch {
                    expected: ScalarKind::Complex,
                    found: T::KIND,
                });
            }
            let theta = rng.uniform::<T::Real>() * T::Real::TAU();
            Ok(phase_factor(theta, n))
        }
    }
}

/// Generates a sample and returns it together with its factors in product
/// order (`A = F_1 F_2 ... F_k`).
#[allow(clippy::type_complexity)]
pub fn generate_with_factors<T: Scalar>(
    config: &GeneratorConfig,
    rng: &mut Rng,
) -> Result<(SquareMatrix<T>, Vec<(FactorKind, SquareMatrix<T>)>)> {
    config.validate::<T>()?;
    let kinds: Vec<FactorKind> = match &config.schedule {
        Some(schedule) => schedule.clone(),
        None => {
            let pool: &[FactorKind] = if config.target == SymplecticKind::ConjugateSymplectic {
                &FactorKind::CONJUGATE_GROUP
            } else {
                &FactorKind::GROUP
            };
            let mut kinds: Vec<FactorKind> = (0..config.num_factors)
                .map(|_| pool[rng.index(pool.len())])
                .collect();
            if config.target == SymplecticKind::ConjugateSymplectic
                && !kinds.contains(&FactorKind::Phase)
            {
                kinds.push(FactorKind::Phase);
            }
            kinds
        }
    };

    let mut product = SquareMatrix::<T>::identity(2 * config.half_dim);
    let mut factors = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let f = sample_factor::<T>(kind, config, rng)?;
        product = &product * &f;
        factors.push((kind, f));
    }
    Ok((product, factors))
}

pub fn generate<T: Scalar>(config: &GeneratorConfig, rng: &mut Rng) -> Result<SquareMatrix<T>> {
    Ok(generate_with_factors(config, rng)?.0)
}

/// [`generate`] with a fresh stream seeded from `config.seed`.
pub fn generate_seeded<T: Scalar>(config: &GeneratorConfig) -> Result<SquareMatrix<T>> {
    generate(config, &mut Rng::new(config.seed))
}

impl FromStr for FactorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shear-lower" => Ok(FactorKind::ShearLower),
            "shear-upper" => Ok(FactorKind::ShearUpper),
            "diag" => Ok(FactorKind::DiagBlock),
            "form" | "J" => Ok(FactorKind::Form),
            "phase" => Ok(FactorKind::Phase),
            other => Err(Error::InvalidConfig(format!("unknown factor {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::log_det;
    use crate::symplectic::{conjugate_symplectic_residual, symplectic_residual};
    use num_complex::Complex;

    type C = Complex<f64>;

    #[test]
    fn zero_shear_is_identity() {
        let o = SquareMatrix::<f64>::zeros(3);
        assert_eq!(shear_lower(&o, SymplecticKind::RealSymplectic), SquareMatrix::identity(6));
        assert_eq!(shear_upper(&o, SymplecticKind::RealSymplectic), SquareMatrix::identity(6));
    }

    #[test]
    fn scalar_shear() {
        let s = SquareMatrix::from_diagonal(&[3.0f64]);
        let a = shear_lower(&s, SymplecticKind::RealSymplectic);
        assert_eq!(a, SquareMatrix::from_rows(&[&[1.0, 0.0], &[3.0, 1.0]]).unwrap());
        assert_eq!(symplectic_residual(&a).unwrap(), 0.0);
        assert!(log_det(&a).distance_to(C::new(1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn hermitian_shear_is_conjugate_symplectic() {
        let mut rng = Rng::new(4);
        let s: SquareMatrix<C> = random_gaussian(&mut rng, 5);
        for a in [
            shear_lower(&s, SymplecticKind::ConjugateSymplectic),
            shear_upper(&s, SymplecticKind::ConjugateSymplectic),
        ] {
            assert!(conjugate_symplectic_residual(&a).unwrap() <= 1e-12);
        }
        let a = shear_lower(&s, SymplecticKind::ComplexSymplectic);
        assert!(symplectic_residual(&a).unwrap() <= 1e-12);
    }

    #[test]
    fn diag_block_cases() {
        let i = SquareMatrix::<f64>::identity(2);
        assert_eq!(diag_block(&i, SymplecticKind::RealSymplectic).unwrap(), SquareMatrix::identity(4));
        let p = SquareMatrix::from_diagonal(&[2.0f64]);
        let a = diag_block(&p, SymplecticKind::RealSymplectic).unwrap();
        assert_eq!(a, SquareMatrix::from_diagonal(&[2.0, 0.5]));
        assert!(log_det(&a).distance_to(C::new(1.0, 0.0)) < 1e-15);
        assert_eq!(
            diag_block(&SquareMatrix::<f64>::zeros(2), SymplecticKind::RealSymplectic),
            Err(Error::Singular)
        );
    }

    #[test]
    fn phase_factor_cases() {
        assert_eq!(phase_factor::<C>(0.0, 2), SquareMatrix::identity(4));
        let a = phase_factor::<C>(std::f64::consts::PI, 1);
        assert!(a.distance(&SquareMatrix::scalar_identity(2, C::new(-1.0, 0.0))) < 1e-15);
        assert!(log_det(&a).distance_to(C::new(1.0, 0.0)) < 1e-15);
        let b = phase_factor::<C>(0.3, 2);
        let d = log_det(&b);
        assert!(d.phase_angle_to(&crate::LogDet::from_scalar(C::from_polar(1.0, 1.2))) < 1e-12);
        assert!(conjugate_symplectic_residual(&b).unwrap() < 1e-15);
    }

    #[test]
    fn forced_form_factor() {
        let mut config = GeneratorConfig::new(SymplecticKind::RealSymplectic, 3, 0);
        config.schedule = Some(vec![FactorKind::Form]);
        let a: SquareMatrix<f64> = generate_seeded(&config).unwrap();
        assert_eq!(a, form_matrix(3).unwrap());
        config.schedule = Some(vec![]);
        assert!(generate_seeded::<f64>(&config).is_err());
        config.schedule = None;
        config.num_factors = 0;
        assert!(generate_seeded::<f64>(&config).is_err());
    }

    #[test]
    fn config_kind_checks() {
        let config = GeneratorConfig::new(SymplecticKind::ConjugateSymplectic, 2, 0);
        assert!(matches!(generate_seeded::<f64>(&config), Err(Error::KindMismatch { .. })));
        let mut config = GeneratorConfig::new(SymplecticKind::RealSymplectic, 2, 0);
        config.schedule = Some(vec![FactorKind::Phase]);
        assert!(generate_seeded::<f64>(&config).is_err());
    }

    #[test]
    fn default_real_sample() {
        let config = GeneratorConfig::new(SymplecticKind::RealSymplectic, 4, 17);
        let a: SquareMatrix<f64> = generate_seeded(&config).unwrap();
        assert!(symplectic_residual(&a).unwrap() <= 1e-9);
        assert!(log_det(&a).distance_to(C::new(1.0, 0.0)) <= 1e-9);
        assert_eq!(a, generate_seeded(&config).unwrap());
    }

    #[test]
    fn conjugate_samples_spread_over_the_circle() {
        let mut far = 0;
        for seed in 0..50 {
            let config = GeneratorConfig::new(SymplecticKind::ConjugateSymplectic, 3, seed);
            let a: SquareMatrix<C> = generate_seeded(&config).unwrap();
            let d = log_det(&a);
            assert!(d.log_magnitude.abs() <= 1e-9);
            if d.distance_to(C::new(1.0, 0.0)) > 1e-3 {
                far += 1;
            }
        }
        assert!(far >= 45, "{far}");
    }

    #[test]
    fn orthogonal_pair_embedding() {
        let i = SquareMatrix::<f64>::identity(2);
        let o = SquareMatrix::<f64>::zeros(2);
        assert_eq!(embed_orthogonal_pair(&i, &o).unwrap(), SquareMatrix::identity(4));
        assert_eq!(embed_orthogonal_pair(&o, &i).unwrap(), form_matrix(2).unwrap());
        let mut rng = Rng::new(8);
        let c: SquareMatrix<f64> = random_gaussian(&mut rng, 3);
        let d: SquareMatrix<f64> = random_gaussian(&mut rng, 3);
        let m = embed_orthogonal_pair(&c, &d).unwrap();
        let det = log_det(&m);
        assert_eq!(det.phase, C::new(1.0, 0.0));
        assert!(embed_orthogonal_pair(&c, &i).is_err());
    }
}
