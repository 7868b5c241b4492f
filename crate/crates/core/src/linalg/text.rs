//! Plain-text matrix format.
//!
//! ```text
//! 2 C
//! 1,0 0,0
//! 0,0 1,-0.5
//! ```
//!
//! The header is `n kind` with kind `R` or `C`; then `n` rows of `n`
//! whitespace-separated entries. Complex entries are written `re,im`.
//! Numbers use `.` as the decimal separator regardless of locale.

use std::fmt::Write as _;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::matrix::SquareMatrix;
use crate::scalar::{RealScalar, Scalar, ScalarKind};

/// A matrix whose scalar kind is only known at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix<R = f64> {
    Real(SquareMatrix<R>),
    Complex(SquareMatrix<Complex<R>>),
}

impl<R: RealScalar> AnyMatrix<R> {
    pub fn kind(&self) -> ScalarKind {
        match self {
            AnyMatrix::Real(_) => ScalarKind::Real,
            AnyMatrix::Complex(_) => ScalarKind::Complex,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyMatrix::Real(m) => m.n(),
            AnyMatrix::Complex(m) => m.n(),
        }
    }

    /// Complex view; real matrices are promoted.
    pub fn into_complex(self) -> SquareMatrix<Complex<R>> {
        match self {
            AnyMatrix::Real(m) => m.to_complex(),
            AnyMatrix::Complex(m) => m,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyMatrix::Real(m) => write_matrix(m),
            AnyMatrix::Complex(m) => write_matrix(m),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_real<R: RealScalar>(token: &str, line: usize) -> Result<R> {
    token
        .parse::<R>()
        .map_err(|_| parse_err(line, format!("invalid number {token:?}")))
}

/// Parses the text format. Blank lines are ignored.
pub fn parse_matrix<R: RealScalar>(input: &str) -> Result<AnyMatrix<R>> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut fields = header.split_whitespace();
    let n: usize = fields
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(hline, "header must start with the dimension"))?;
    if n == 0 {
        return Err(parse_err(hline, "dimension must be at least 1"));
    }
    let kind = match fields.next() {
        Some("R") => ScalarKind::Real,
        Some("C") => ScalarKind::Complex,
        other => {
            return Err(parse_err(
                hline,
                format!("kind must be R or C, found {other:?}"),
            ))
        }
    };
    if fields.next().is_some() {
        return Err(parse_err(hline, "unexpected trailing header field"));
    }

    let mut entries: Vec<Complex<R>> = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (lno, line) in lines {
        if rows == n {
            return Err(parse_err(lno, "more rows than the header declares"));
        }
        let before = entries.len();
        for token in line.split_whitespace() {
            let value = match (kind, token.split_once(',')) {
                (ScalarKind::Real, None) => Complex::new(parse_real(token, lno)?, R::zero()),
                (ScalarKind::Real, Some(_)) => {
                    return Err(parse_err(lno, format!("complex entry {token:?} in real matrix")))
                }
                (ScalarKind::Complex, Some((re, im))) => {
                    Complex::new(parse_real(re, lno)?, parse_real(im, lno)?)
                }
                (ScalarKind::Complex, None) => {
                    return Err(parse_err(lno, format!("complex entry {token:?} must be re,im")))
                }
            };
            entries.push(value);
        }
        if entries.len() - before != n {
            return Err(parse_err(
                lno,
                format!("expected {n} entries, found {}", entries.len() - before),
            ));
        }
        rows += 1;
    }
    if rows != n {
        return Err(parse_err(
            hline,
            format!("expected {n} rows, found {rows}"),
        ));
    }

    Ok(match kind {
        ScalarKind::Real => {
            AnyMatrix::Real(SquareMatrix::from_row_major(n, entries.iter().map(|z| z.re).collect())?)
        }
        ScalarKind::Complex => AnyMatrix::Complex(SquareMatrix::from_row_major(n, entries)?),
    })
}

/// Writes a matrix in the text format. Numbers use the shortest
/// representation that parses back to the same value.
pub fn write_matrix<T: Scalar>(m: &SquareMatrix<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.n(), T::KIND.tag());
    for i in 0..m.n() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|x| match T::KIND {
                ScalarKind::Real => format!("{:?}", x.re()),
                ScalarKind::Complex => format!("{:?},{:?}", x.re(), x.im()),
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
