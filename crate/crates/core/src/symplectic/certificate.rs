use std::fmt;

use num_complex::Complex;
use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::linalg::matrix::shifted;
use crate::linalg::{log_det, LogDet, SquareMatrix};
use crate::scalar::{RealScalar, Scalar, ScalarKind};
use crate::symplectic::blocks::{block_pair, embed_pair, j_conjugate, unitary_split_det};
use crate::symplectic::form::check_membership;
use crate::symplectic::SymplecticKind;
use crate::tolerance::ToleranceConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// One verified step of a certificate.
#[derive(Clone, Debug)]
pub struct Check<R> {
    pub name: &'static str,
    /// The identity or inequality being checked.
    pub statement: &'static str,
    /// Both sides as evaluated.
    pub detail: String,
    pub residual: R,
    pub tolerance: R,
    /// Strict checks pass only when `residual < tolerance`.
    pub strict: bool,
}

impl<R: RealScalar> Check<R> {
    pub fn passed(&self) -> bool {
        if self.strict {
            self.residual < self.tolerance
        } else {
            self.residual <= self.tolerance
        }
    }
}

impl<R: RealScalar> fmt::Display for Check<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed() { "ok  " } else { "FAIL" };
        let rel = if self.strict { "<" } else { "<=" };
        write!(
            f,
            "[{mark}] {}: {}\n       {}\n       residual {:e} {rel} {:e}",
            self.name, self.statement, self.detail, self.residual, self.tolerance
        )
    }
}

/// Transcript of the determinant argument for one symplectic matrix.
///
/// `lhs_det` is `det(A^T A + I)` (or `det(A^* A + I)`), `auxiliary_det` is the
/// determinant of the embedded block pair, and the checks tie them to
/// `det_a` until the sign of `det(A)` is pinned to `+1`.
#[derive(Clone, Debug)]
pub struct Certificate<R> {
    pub mode: SymplecticKind,
    pub half_dim: usize,
    pub det_a: LogDet<R>,
    pub auxiliary_det: LogDet<R>,
    pub lhs_det: LogDet<R>,
    /// `(det(C + iD), det(C - iD))`, real mode only.
    pub split_det: Option<(LogDet<R>, LogDet<R>)>,
    pub checks: Vec<Check<R>>,
    pub verdict: Verdict,
}

impl<R: RealScalar> Certificate<R> {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn residuals(&self) -> impl Iterator<Item = (&'static str, R)> + '_ {
        self.checks.iter().map(|c| (c.name, c.residual))
    }

    pub fn residual(&self, name: &str) -> Option<R> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check<R>> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn narrative(&self) -> Vec<String> {
        self.checks.iter().map(|c| c.to_string()).collect()
    }
}

struct Builder<R> {
    checks: Vec<Check<R>>,
}

impl<R: RealScalar> Builder<R> {
    fn push(&mut self, name: &'static str, statement: &'static str, detail: String, residual: R, tolerance: f64) {
        self.checks.push(Check {
            name,
            statement,
            detail,
            residual,
            tolerance: R::of(tolerance),
            strict: false,
        });
    }
}

/// Certifies `det(A) = 1` for a real (`RealSymplectic`) or complex
/// (`ComplexSymplectic`) symplectic matrix.
///
/// The input must pass the membership predicate first; otherwise
/// [`Error::NotMember`] is returned and nothing is certified.
pub fn theorem_certificate<T: Scalar>(
    a: &SquareMatrix<T>,
    mode: SymplecticKind,
    tol: &ToleranceConfig,
) -> Result<Certificate<T::Real>> {
    let expected_kind = match mode {
        SymplecticKind::RealSymplectic => ScalarKind::Real,
        SymplecticKind::ComplexSymplectic => ScalarKind::Complex,
        SymplecticKind::ConjugateSymplectic => {
            return Err(Error::InvalidConfig(
                "conjugate symplectic matrices are handled by the phase formula".into(),
            ))
        }
    };
    if T::KIND != expected_kind {
        return Err(Error::KindMismatch {
            expected: expected_kind,
            found: T::KIND,
        });
    }
    let membership = check_membership(a, mode, tol.membership)?;
    let real_mode = mode == SymplecticKind::RealSymplectic;
    let half_dim = a.n() / 2;
    let one = Complex::<T::Real>::one();
    let mut b = Builder { checks: Vec::new() };

    b.push(
        "membership",
        if real_mode { "A^T J A = J" } else { "A^T J A = J (complex)" },
        format!("||A^T J A - J||_F / ||J||_F = {membership:e}"),
        membership,
        tol.membership * (a.frobenius_norm() * a.frobenius_norm()).as_f64().max(1.0),
    );

    let det_a = log_det(a);
    b.push(
        "det_unit_modulus",
        "det(A^T) det(J) det(A) = det(J), so |det(A)| = 1",
        format!("log|det(A)| = {:e}", det_a.log_magnitude),
        det_a.log_magnitude.abs(),
        tol.determinant,
    );
    b.push(
        "det_phase_real",
        "det(A) = +1 or -1 before the sign is resolved",
        format!("phase(det A) = {:e}{:+e}i", det_a.phase.re, det_a.phase.im),
        det_a.phase.im.abs(),
        tol.determinant,
    );

    let a_adj = if real_mode { a.transpose() } else { a.conj_transpose() };
    let gram = shifted(&(&a_adj * a), T::one());
    let lhs = log_det(&gram);
    let gram_name = if real_mode { "A^T A + I" } else { "A^* A + I" };
    b.checks.push(Check {
        name: "gram_log_det_deficit",
        statement: if real_mode { "det(A^T A + I) > 1" } else { "det(A^* A + I) > 1" },
        detail: format!("det({gram_name}) = {lhs}, log = {:e}", lhs.log_magnitude),
        residual: -lhs.log_magnitude,
        tolerance: T::Real::zero(),
        strict: true,
    });
    b.push(
        "gram_phase",
        "det of a Hermitian positive definite matrix is real positive",
        format!("phase = {:e}{:+e}i", lhs.phase.re, lhs.phase.im),
        (lhs.phase - one).norm(),
        tol.identity,
    );

    // A^T A + I = A^T (A + A^{-T}) with A^{-T} = J A J^{-1}; the complex case
    // conjugates J A J^{-1}.
    let jaj = j_conjugate(a)?;
    let jaj = if real_mode { jaj } else { jaj.conjugate() };
    let sum = a + &jaj;
    let factored = &a_adj * &sum;
    b.push(
        "factorization_matrix",
        if real_mode {
            "A^T A + I = A^T (A + J A J^{-1})"
        } else {
            "A^* A + I = A^* (A + conj(J A J^{-1}))"
        },
        format!("||lhs||_F = {:e}", gram.frobenius_norm()),
        factored.distance(&gram) / gram.frobenius_norm(),
        tol.identity,
    );

    let pair = block_pair(a, mode)?;
    let embedded = embed_pair(&pair);
    let aux = log_det(&embedded);
    let det_a_factor = if real_mode { det_a } else { det_a.conj() };
    let rhs = det_a_factor * aux;
    b.push(
        "factorization_identity",
        if real_mode {
            "det(A^T A + I) = det(A) det([[C, D], [-D, C]])"
        } else {
            "det(A^* A + I) = conj(det A) det([[C, D], [-conj D, conj C]])"
        },
        format!("lhs = {lhs}, rhs = {rhs}"),
        lhs.relative_distance(&rhs),
        tol.identity,
    );

    let mut split_det = None;
    if real_mode {
        let (plus, minus) = unitary_split_det(&pair)?;
        split_det = Some((plus, minus));
        b.push(
            "split_conjugate",
            "det(C - iD) = conj(det(C + iD)) for real C, D",
            format!("det(C + iD) = {plus}, det(C - iD) = {minus}"),
            minus.relative_distance(&plus.conj()),
            tol.identity,
        );
        b.push(
            "ineq_real",
            "det([[C, D], [-D, C]]) = |det(C + iD)|^2 >= 0",
            format!("dense = {aux}, split = {}", plus.modulus_sqr()),
            aux.relative_distance(&plus.modulus_sqr()),
            tol.identity,
        );
        let chain = det_a * plus.modulus_sqr();
        b.push(
            "split_identity",
            "det(A^T A + I) = det(A) |det(C + iD)|^2",
            format!("lhs = {lhs}, rhs = {chain}"),
            lhs.relative_distance(&chain),
            tol.identity,
        );
    } else {
        b.push(
            "lemma_phase",
            "det([[C, D], [-conj D, conj C]]) >= 0",
            format!("det = {aux}"),
            (aux.phase - one).norm(),
            tol.identity,
        );
    }

    let concluded = if real_mode {
        lhs * aux.recip()
    } else {
        (lhs * aux.recip()).conj()
    };
    b.push(
        "concluded_sign",
        "det(A) = det(lhs) / det(block matrix), a ratio of positive numbers",
        format!("concluded det(A) = {concluded}"),
        concluded.distance_to(one),
        tol.determinant,
    );
    b.push(
        "det_minus_one",
        "det(A) = 1",
        format!("det(A) = {det_a}"),
        det_a.distance_to(one),
        tol.determinant,
    );

    let verdict = if b.checks.iter().all(Check::passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Certificate {
        mode,
        half_dim,
        det_a,
        auxiliary_det: aux,
        lhs_det: lhs,
        split_det,
        checks: b.checks,
        verdict,
    })
}
