use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::matrix::times_i;
use crate::linalg::{log_det, LogDet, SquareMatrix};
use crate::scalar::{RealScalar, Scalar};
use crate::symplectic::blocks::block_pair;
use crate::symplectic::form::check_membership;
use crate::symplectic::SymplecticKind;
use crate::tolerance::ToleranceConfig;

/// `M = C^2 + D^2 - i [C, D]` with `C = A11 + A22`, `D = A12 - A21` and
/// `[C, D] = CD - DC`. Equals `(C + iD)(C - iD)`.
pub fn formula_matrix<T: Scalar>(a: &SquareMatrix<T>) -> Result<SquareMatrix<Complex<T::Real>>> {
    let pair = block_pair(&a.to_complex(), SymplecticKind::ConjugateSymplectic)?;
    let (c, d) = (&pair.c, &pair.d);
    let cd = c * d;
    let dc = d * c;
    let commutator = &cd - &dc;
    let squares = &(c * c) + &(d * d);
    Ok(&squares - &times_i(&commutator))
}

/// `det(M)` for [`formula_matrix`], with the inconclusive-floor check applied.
pub fn formula_det<T: Scalar>(a: &SquareMatrix<T>, floor: f64) -> Result<LogDet<T::Real>> {
    let det_m = log_det(&formula_matrix(a)?);
    let log_floor = floor.ln();
    let lm = det_m.log_magnitude.as_f64();
    if !(lm >= log_floor) {
        return Err(Error::FormulaInconclusive {
            log_magnitude: lm,
            floor,
        });
    }
    Ok(det_m)
}

/// `det(A) = det(M) / |det(M)|` for a conjugate symplectic `A` (`A^* J A = J`).
///
/// Real symplectic input is accepted and yields `1`. Fails with
/// [`Error::NotMember`] when `A` is not conjugate symplectic and with
/// [`Error::FormulaInconclusive`] when `|det M|` is below `tol.formula_floor`.
pub fn conj_symplectic_det_formula<T: Scalar>(
    a: &SquareMatrix<T>,
    tol: &ToleranceConfig,
) -> Result<Complex<T::Real>> {
    check_membership(a, SymplecticKind::ConjugateSymplectic, tol.membership)?;
    Ok(formula_det(a, tol.formula_floor)?.phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::form_matrix;

    type C = Complex<f64>;

    #[test]
    fn scalar_phase_matrix() {
        // A = e^{i theta} I_2: M = 4 e^{2 i theta}, det(A) = e^{2 i theta}.
        let theta = 0.3;
        let a = SquareMatrix::scalar_identity(2, C::from_polar(1.0, theta));
        let m = formula_matrix(&a).unwrap();
        assert!((m[(0, 0)] - C::from_polar(4.0, 2.0 * theta)).norm() < 1e-15);
        let phase = conj_symplectic_det_formula(&a, &ToleranceConfig::default()).unwrap();
        assert!((phase - C::from_polar(1.0, 0.6)).norm() < 1e-15);
    }

    #[test]
    fn form_gives_one() {
        let j = form_matrix::<C>(2).unwrap();
        let m = formula_matrix(&j).unwrap();
        assert_eq!(m, SquareMatrix::scalar_identity(2, C::new(4.0, 0.0)));
        let phase = conj_symplectic_det_formula(&j, &ToleranceConfig::default()).unwrap();
        assert!((phase - C::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn real_symplectic_input_gives_one() {
        let a = SquareMatrix::from_rows(&[&[1.0f64, 0.0], &[3.0, 1.0]]).unwrap();
        let phase = conj_symplectic_det_formula(&a, &ToleranceConfig::default()).unwrap();
        assert!((phase - C::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn non_member_is_distinct_from_inconclusive() {
        let a = SquareMatrix::from_diagonal(&[C::new(2.0, 0.0), C::new(2.0, 0.0)]);
        assert!(matches!(
            conj_symplectic_det_formula(&a, &ToleranceConfig::default()),
            Err(Error::NotMember { .. })
        ));
        // A J-antisymmetric A has C = D = 0 and so M = 0.
        let z = SquareMatrix::from_diagonal(&[C::new(1.0, 0.0), C::new(-1.0, 0.0)]);
        assert!(matches!(
            formula_det(&z, 1e-200),
            Err(Error::FormulaInconclusive { .. })
        ));
    }
}
