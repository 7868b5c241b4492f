use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex;
use thiserror::Error;

use sympdet_core::symplectic::formula::formula_det;
use sympdet_core::symplectic::{check_membership, membership_threshold, theorem_certificate};
use sympdet_core::{
    log_det, parse_matrix, AnyMatrix, Error, LogDet, Scalar, ScalarKind, SquareMatrix, SymplecticKind,
    ToleranceConfig,
};

use crate::report::{Failure, Report, ReportConfig, TOOL};

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

/// Certifies the matrix stored in `path`.
///
/// `mode` defaults to `real` for `R` files and `complex` for `C` files. Real
/// files are promoted in `complex` and `conjugate` mode. A matrix that fails
/// the membership predicate yields a report with one failure, not an error.
pub fn certify_file(
    path: &Path,
    mode: Option<SymplecticKind>,
    tol: &ToleranceConfig,
) -> Result<Report, CertifyError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CertifyError::Io {
        path: display.clone(),
        source,
    })?;
    let matrix = parse_matrix::<f64>(&text).map_err(|source| CertifyError::Parse {
        path: display.clone(),
        source,
    })?;
    let mode = mode.unwrap_or(match matrix.kind() {
        ScalarKind::Real => SymplecticKind::RealSymplectic,
        ScalarKind::Complex => SymplecticKind::ComplexSymplectic,
    });
    let mut report = certify_matrix(matrix, mode, tol)?;
    report.config.path = Some(display);
    Ok(report)
}

pub fn certify_matrix(
    matrix: AnyMatrix<f64>,
    mode: SymplecticKind,
    tol: &ToleranceConfig,
) -> Result<Report, CertifyError> {
    let start = Instant::now();
    if matrix.n() % 2 != 0 {
        return Err(Error::OddDimension(matrix.n()).into());
    }
    let half_dim = matrix.n() / 2;
    let outcome = match (mode, matrix) {
        (SymplecticKind::RealSymplectic, AnyMatrix::Real(a)) => theorem(&a, mode, tol)?,
        (SymplecticKind::RealSymplectic, AnyMatrix::Complex(_)) => {
            return Err(Error::KindMismatch {
                expected: ScalarKind::Real,
                found: ScalarKind::Complex,
            }
            .into())
        }
        (SymplecticKind::ComplexSymplectic, m) => theorem(&m.into_complex(), mode, tol)?,
        (SymplecticKind::ConjugateSymplectic, m) => formula(&m.into_complex(), tol)?,
    };

    let mut config = ReportConfig::new(0, vec![half_dim], tol);
    config.mode = Some(mode.as_str().to_string());
    let passed = outcome.passed;
    let failures = if passed {
        Vec::new()
    } else {
        vec![Failure {
            seed: 0,
            half_dim,
            residuals: outcome.residuals.clone(),
            error: outcome.error,
        }]
    };
    Ok(Report {
        tool: TOOL.to_string(),
        suite: format!("certify-{}", mode.as_str()),
        config,
        trials: 1,
        passes: u64::from(passed),
        failures,
        worst_residuals: outcome.residuals,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        certificate: Some(outcome.narrative),
    })
}

struct Outcome {
    passed: bool,
    residuals: BTreeMap<String, f64>,
    narrative: Vec<String>,
    error: Option<String>,
}

fn rejected<T: Scalar<Real = f64>>(a: &SquareMatrix<T>, mode: SymplecticKind, err: Error) -> Result<Outcome, Error> {
    let Error::NotMember { residual, tolerance } = err else {
        return Err(err);
    };
    let predicate = if mode.uses_conjugate_transpose() { "A^* J A = J" } else { "A^T J A = J" };
    Ok(Outcome {
        passed: false,
        residuals: BTreeMap::from([("membership".to_string(), residual)]),
        narrative: vec![format!(
            "[FAIL] membership: {predicate}\n       ||A J A - J||_F / ||J||_F = {residual:e} exceeds {tolerance:e} (||A||_F = {:e}); not certified",
            a.frobenius_norm()
        )],
        error: Some(format!("not a {} symplectic matrix", mode.as_str())),
    })
}

fn theorem<T: Scalar<Real = f64>>(
    a: &SquareMatrix<T>,
    mode: SymplecticKind,
    tol: &ToleranceConfig,
) -> Result<Outcome, Error> {
    let cert = match theorem_certificate(a, mode, tol) {
        Ok(cert) => cert,
        Err(err) => return rejected(a, mode, err),
    };
    let mut narrative = cert.narrative();
    narrative.push(format!(
        "verdict: {}; det(A) = {}",
        if cert.passed() { "certified" } else { "NOT certified" },
        cert.det_a
    ));
    Ok(Outcome {
        passed: cert.passed(),
        residuals: cert.residuals().map(|(k, v)| (k.to_string(), v)).collect(),
        narrative,
        error: None,
    })
}

fn formula(a: &SquareMatrix<Complex<f64>>, tol: &ToleranceConfig) -> Result<Outcome, Error> {
    let mode = SymplecticKind::ConjugateSymplectic;
    let membership = match check_membership(a, mode, tol.membership) {
        Ok(r) => r,
        Err(err) => return rejected(a, mode, err),
    };
    let oracle = log_det(a);
    let det_m = formula_det(a, tol.formula_floor)?;
    let formula_phase = LogDet::from_parts(0.0, det_m.phase);
    let angle = oracle.phase_angle_to(&formula_phase);
    let unit = (oracle.magnitude() - 1.0).abs();
    let threshold = membership_threshold(a, tol.membership);

    let mut residuals = BTreeMap::new();
    residuals.insert("membership".to_string(), membership);
    residuals.insert("det_unit_modulus".to_string(), unit);
    residuals.insert("formula_phase_angle".to_string(), angle);
    let passed = unit <= tol.determinant && angle <= tol.phase;
    let mark = |ok: bool| if ok { "ok  " } else { "FAIL" };
    let p = det_m.phase;
    let q = oracle.phase;
    let narrative = vec![
        format!(
            "[ok  ] membership: A^* J A = J\n       residual {membership:e} <= {threshold:e}"
        ),
        format!(
            "[{}] det_unit_modulus: |det(A)| = 1\n       |det(A)| = {:e} by LU\n       residual {unit:e} <= {:e}",
            mark(unit <= tol.determinant),
            oracle.magnitude(),
            tol.determinant
        ),
        format!(
            "[{}] formula_phase_angle: det(A) = det(M)/|det(M)|, M = C^2 + D^2 - i[C, D]\n       formula: det(A) = {:e}{:+e}i (angle {:e})\n       LU:      det(A) = {:e}{:+e}i (angle {:e})\n       |det(M)| = {}\n       residual {angle:e} <= {:e}",
            mark(angle <= tol.phase),
            p.re,
            p.im,
            p.arg(),
            q.re,
            q.im,
            q.arg(),
            LogDet::from_parts(det_m.log_magnitude, Complex::new(1.0, 0.0)),
            tol.phase
        ),
    ];
    Ok(Outcome {
        passed,
        residuals,
        narrative,
        error: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sympdet_core::symplectic::form_matrix;
    use sympdet_core::C64;

    #[test]
    fn form_certifies() {
        let j = form_matrix::<f64>(2).unwrap();
        let r = certify_matrix(AnyMatrix::Real(j), SymplecticKind::RealSymplectic, &ToleranceConfig::default())
            .unwrap();
        assert!(r.all_passed());
        assert!(r.worst_residuals["det_minus_one"] < 1e-15);
    }

    #[test]
    fn non_member_is_rejected_with_residual() {
        let a = SquareMatrix::from_diagonal(&[3.0, 3.0]);
        let r = certify_matrix(AnyMatrix::Real(a), SymplecticKind::RealSymplectic, &ToleranceConfig::default())
            .unwrap();
        assert_eq!(r.passes, 0);
        assert!((r.failures[0].residuals["membership"] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_phase_in_conjugate_mode() {
        let a = SquareMatrix::scalar_identity(4, C64::from_polar(1.0, 0.3));
        let r = certify_matrix(AnyMatrix::Complex(a), SymplecticKind::ConjugateSymplectic, &ToleranceConfig::default())
            .unwrap();
        assert!(r.all_passed());
        let text = r.certificate.unwrap().join("\n");
        assert!(text.contains("angle 1.2"), "{text}");
    }

    #[test]
    fn real_mode_rejects_complex_input() {
        let a = SquareMatrix::<C64>::identity(2);
        assert!(certify_matrix(AnyMatrix::Complex(a), SymplecticKind::RealSymplectic, &ToleranceConfig::default())
            .is_err());
    }
}
