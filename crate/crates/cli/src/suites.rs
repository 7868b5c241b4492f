//! Property suites and the trial runner.
//!
//! Every trial is a pure function of `(suite, trial seed, half dimension,
//! tolerances)`, so a failure can be replayed from its report entry alone.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex;
use rayon::prelude::*;

use sympdet_core::generators::{self, embed_orthogonal_pair, GeneratorConfig};
use sympdet_core::linalg::condition_estimate;
use sympdet_core::linalg::matrix::shifted;
use sympdet_core::symplectic::lemma::nonnegativity_defects;
use sympdet_core::symplectic::{
    self, lemma_det, lemma_reduction, membership_residual, membership_threshold,
    theorem_certificate, unitary_split_det, BlockPair, SymplecticForm,
};
use sympdet_core::{
    log_det, random_gaussian, CMatrix, Error, LogDet, RMatrix, Rng, Scalar, SquareMatrix,
    SymplecticKind, ToleranceConfig, C64,
};

use crate::report::{Failure, Report, ReportConfig, TOOL};

/// Absolute floor in the lemma sign checks: `|Im det| <= rel |det| + floor`.
pub const LEMMA_ABSOLUTE_FLOOR: f64 = 1e-12;
/// `||C||_F ||C^{-1}||_F` below which the lemma reduction identities are checked.
pub const WELL_CONDITIONED: f64 = 1e4;
/// Near-singular shifts used for `C = eps I + (rank-deficient)`.
pub const NEAR_SINGULAR_SHIFTS: [f64; 2] = [1e-2, 1e-6];
/// Membership tolerance for generated samples, scaled like the predicate.
pub const GENERATED_MEMBERSHIP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteId {
    FormIdentities,
    RealTheorem,
    ComplexTheorem,
    Lemma,
    IneqReal,
    ConjFormula,
    GeneratorSanity,
}

impl SuiteId {
    pub const ALL: [SuiteId; 7] = [
        SuiteId::FormIdentities,
        SuiteId::RealTheorem,
        SuiteId::ComplexTheorem,
        SuiteId::Lemma,
        SuiteId::IneqReal,
        SuiteId::ConjFormula,
        SuiteId::GeneratorSanity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::FormIdentities => "form-identities",
            SuiteId::RealTheorem => "real-theorem",
            SuiteId::ComplexTheorem => "complex-theorem",
            SuiteId::Lemma => "lemma",
            SuiteId::IneqReal => "ineq-real",
            SuiteId::ConjFormula => "conj-formula",
            SuiteId::GeneratorSanity => "generator-sanity",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            SuiteId::FormIdentities => 8,
            SuiteId::RealTheorem | SuiteId::ComplexTheorem | SuiteId::ConjFormula => 200,
            SuiteId::Lemma | SuiteId::IneqReal => 500,
            SuiteId::GeneratorSanity => 50,
        }
    }

    pub fn default_half_dims(self) -> Vec<usize> {
        match self {
            SuiteId::FormIdentities | SuiteId::Lemma | SuiteId::IneqReal => (1..=8).collect(),
            SuiteId::RealTheorem | SuiteId::ComplexTheorem => vec![1, 2, 4, 8, 10],
            SuiteId::ConjFormula => vec![1, 2, 3, 4, 6, 8, 12, 16],
            SuiteId::GeneratorSanity => vec![1, 2, 4, 8, 16],
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = SuiteId::ALL.iter().map(|id| id.as_str()).collect();
                format!("unknown suite {s:?} (expected one of {})", names.join(", "))
            })
    }
}

/// Parses `4`, `1..8` (inclusive) or `1,2,4,8`.
pub fn parse_half_dims(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid half-dimension list {s:?}");
    let dims: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if dims.is_empty() || dims.contains(&0) {
        return Err(format!("half-dimensions must be a nonempty list of values >= 1, got {s:?}"));
    }
    Ok(dims)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteSpec {
    pub suite: SuiteId,
    pub trials: usize,
    pub half_dims: Vec<usize>,
    pub seed: u64,
    pub tolerances: ToleranceConfig,
}

impl SuiteSpec {
    pub fn new(suite: SuiteId) -> Self {
        Self {
            suite,
            trials: suite.default_trials(),
            half_dims: suite.default_half_dims(),
            seed: 42,
            tolerances: ToleranceConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if self.half_dims.is_empty() || self.half_dims.contains(&0) {
            return Err("half-dimensions must be at least 1".into());
        }
        Ok(())
    }

    /// Seed and half-dimension of trial `index`.
    pub fn trial_params(&self, index: usize) -> (u64, usize) {
        (
            Rng::child_seed(self.seed, index as u64),
            self.half_dims[index % self.half_dims.len()],
        )
    }
}

/// Result of one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    pub passed: bool,
    pub residuals: BTreeMap<String, f64>,
    pub error: Option<String>,
}

/// Collects named residuals and whether each met its threshold.
#[derive(Default)]
struct Trial {
    passed: bool,
    residuals: BTreeMap<String, f64>,
    failed: Vec<String>,
}

impl Trial {
    fn new() -> Self {
        Self {
            passed: true,
            ..Default::default()
        }
    }

    fn value(v: f64) -> f64 {
        // JSON has no infinities; report them as the largest finite double.
        if v.is_nan() {
            f64::MAX
        } else {
            v.clamp(-f64::MAX, f64::MAX)
        }
    }

    fn check(&mut self, name: &str, residual: f64, threshold: f64) {
        if !(residual <= threshold) {
            self.passed = false;
            self.failed.push(name.to_string());
        }
        self.residuals.insert(name.to_string(), Self::value(residual));
    }

    fn check_strict(&mut self, name: &str, residual: f64, threshold: f64) {
        if !(residual < threshold) {
            self.passed = false;
            self.failed.push(name.to_string());
        }
        self.residuals.insert(name.to_string(), Self::value(residual));
    }

    fn finish(self) -> TrialOutcome {
        TrialOutcome {
            passed: self.passed,
            residuals: self.residuals,
            error: None,
        }
    }
}

fn error_outcome(err: Error) -> TrialOutcome {
    TrialOutcome {
        passed: false,
        residuals: BTreeMap::new(),
        error: Some(err.to_string()),
    }
}

/// Runs a single trial; deterministic in its arguments.
pub fn run_trial(suite: SuiteId, seed: u64, half_dim: usize, tol: &ToleranceConfig) -> TrialOutcome {
    let result = match suite {
        SuiteId::FormIdentities => form_identities(half_dim, tol),
        SuiteId::RealTheorem => theorem_trial::<f64>(SymplecticKind::RealSymplectic, seed, half_dim, tol),
        SuiteId::ComplexTheorem => {
            theorem_trial::<C64>(SymplecticKind::ComplexSymplectic, seed, half_dim, tol)
        }
        SuiteId::Lemma => lemma_trial(seed, half_dim, tol),
        SuiteId::IneqReal => ineq_real_trial(seed, half_dim, tol),
        SuiteId::ConjFormula => conj_formula_trial(seed, half_dim, tol),
        SuiteId::GeneratorSanity => generator_sanity_trial(seed, half_dim, tol),
    };
    result.unwrap_or_else(error_outcome)
}

/// Runs every trial of `spec` (in parallel on the current rayon pool) and
/// merges results in trial order.
pub fn run_suite(spec: &SuiteSpec) -> Report {
    let start = Instant::now();
    let outcomes: Vec<(u64, usize, TrialOutcome)> = (0..spec.trials)
        .into_par_iter()
        .map(|i| {
            let (seed, n) = spec.trial_params(i);
            (seed, n, run_trial(spec.suite, seed, n, &spec.tolerances))
        })
        .collect();
    let mut report = assemble(spec.suite, ReportConfig::new(spec.seed, spec.half_dims.clone(), &spec.tolerances), outcomes);
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    report
}

/// Re-runs one trial from a failure's recorded seed and half-dimension.
pub fn replay(suite: SuiteId, seed: u64, half_dim: usize, tol: &ToleranceConfig) -> Report {
    let start = Instant::now();
    let outcome = run_trial(suite, seed, half_dim, tol);
    let mut config = ReportConfig::new(seed, vec![half_dim], tol);
    config.replay = true;
    let mut report = assemble(suite, config, vec![(seed, half_dim, outcome)]);
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    report
}

fn assemble(suite: SuiteId, config: ReportConfig, outcomes: Vec<(u64, usize, TrialOutcome)>) -> Report {
    let mut worst: BTreeMap<String, f64> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut passes = 0;
    let trials = outcomes.len() as u64;
    for (seed, half_dim, outcome) in outcomes {
        for (name, &v) in &outcome.residuals {
            worst
                .entry(name.clone())
                .and_modify(|w| *w = w.max(v))
                .or_insert(v);
        }
        if outcome.passed {
            passes += 1;
        } else {
            failures.push(Failure {
                seed,
                half_dim,
                residuals: outcome.residuals,
                error: outcome.error,
            });
        }
    }
    Report {
        tool: TOOL.to_string(),
        suite: suite.as_str().to_string(),
        config,
        trials,
        passes,
        failures,
        worst_residuals: worst,
        elapsed_seconds: 0.0,
        certificate: None,
    }
}

fn form_identities(n: usize, tol: &ToleranceConfig) -> sympdet_core::Result<TrialOutcome> {
    let form = SymplecticForm::new(n)?;
    let j: RMatrix = form.matrix();
    let id = SquareMatrix::identity(2 * n);
    let mut t = Trial::new();
    t.check("j_squared_plus_identity", (&j * &j).distance(&-&id), tol.exact);
    t.check("transpose_plus_j", j.transpose().distance(&-&j), tol.exact);
    t.check("jt_j_minus_identity", (&j.transpose() * &j).distance(&id), tol.exact);
    let j_inv = sympdet_core::linalg::inverse(&j)?;
    t.check("inverse_minus_transpose", j_inv.distance(&j.transpose()), tol.exact);
    t.check("det_minus_one", log_det(&j).distance_to(Complex::new(1.0, 0.0)), tol.exact);
    Ok(t.finish())
}

fn theorem_trial<T: Scalar<Real = f64>>(
    kind: SymplecticKind,
    seed: u64,
    n: usize,
    tol: &ToleranceConfig,
) -> sympdet_core::Result<TrialOutcome> {
    let config = GeneratorConfig::new(kind, n, seed);
    let a: SquareMatrix<T> = generators::generate_seeded(&config)?;
    let cert = theorem_certificate(&a, kind, tol)?;
    let mut t = Trial::new();
    for check in &cert.checks {
        if check.strict {
            t.check_strict(check.name, check.residual, check.tolerance);
        } else {
            t.check(check.name, check.residual, check.tolerance);
        }
    }
    Ok(t.finish())
}

/// `C = eps I + U V` with the last column of `U` zeroed, so `U V` has rank
/// at most `N - 1`.
fn near_singular(rng: &mut Rng, n: usize, eps: f64) -> CMatrix {
    let mut u: CMatrix = random_gaussian(rng, n);
    for i in 0..n {
        u[(i, n - 1)] = C64::new(0.0, 0.0);
    }
    let v: CMatrix = random_gaussian(rng, n);
    shifted(&(&u * &v), C64::new(eps, 0.0))
}

fn sign_checks(t: &mut Trial, prefix: &str, det: &LogDet<f64>, log_scale: f64, rel: f64, abs: f64) {
    // |Im det| <= rel |det| + abs and Re det >= -(rel |det| + abs), in units of exp(log_scale).
    let (im, neg) = nonnegativity_defects(det, log_scale);
    let threshold = rel * (det.log_magnitude - log_scale).exp() + abs * (-log_scale).exp();
    t.check(&format!("{prefix}_imag"), im, threshold);
    t.check(&format!("{prefix}_negative"), neg, threshold);
}

fn lemma_trial(seed: u64, n: usize, tol: &ToleranceConfig) -> sympdet_core::Result<TrialOutcome> {
    let mut rng = Rng::new(seed);
    let variant = rng.index(1 + NEAR_SINGULAR_SHIFTS.len());
    let c: CMatrix = if variant == 0 {
        random_gaussian(&mut rng, n)
    } else {
        near_singular(&mut rng, n, NEAR_SINGULAR_SHIFTS[variant - 1])
    };
    let d: CMatrix = random_gaussian(&mut rng, n);
    let mut t = Trial::new();

    // Sign of det([[C, D], [-conj D, conj C]]), measured in units of |det|.
    let det = lemma_det(&c, &d)?;
    let own_scale = if det.is_zero() { 0.0 } else { det.log_magnitude };
    sign_checks(&mut t, "lemma", &det, own_scale, tol.identity, LEMMA_ABSOLUTE_FLOOR);

    let cond = condition_estimate(&c);
    if cond <= WELL_CONDITIONED {
        let probe = lemma_reduction(&c, &d)?;
        if let (Some(block), Some(schur), Some(ce), Some(gram)) = (
            probe.block_identity_residual,
            probe.schur_identity_residual,
            probe.ce_residual,
            probe.gram_det,
        ) {
            t.check("reduction_block_identity", block, tol.identity);
            t.check("reduction_schur_identity", schur, tol.identity);
            t.check("reduction_ce", ce, tol.identity);
            let e = probe.e.as_ref().expect("reduced probe has E");
            let gram_matrix = shifted(&(&e.conjugate() * e), C64::new(1.0, 0.0));
            let (im, neg) = nonnegativity_defects(&gram, gram_matrix.log_hadamard_bound());
            t.check("reduction_gram_imag", im, tol.identity);
            t.check("reduction_gram_negative", neg, tol.identity);
        }
    }

    // det(conj(E) E + I) >= 0 for an unrelated random E.
    let e: CMatrix = random_gaussian(&mut rng, n);
    let gram_matrix = shifted(&(&e.conjugate() * &e), C64::new(1.0, 0.0));
    let (im, neg) = nonnegativity_defects(&log_det(&gram_matrix), gram_matrix.log_hadamard_bound());
    t.check("random_gram_imag", im, tol.identity);
    t.check("random_gram_negative", neg, tol.identity);
    Ok(t.finish())
}

fn ineq_real_trial(seed: u64, n: usize, tol: &ToleranceConfig) -> sympdet_core::Result<TrialOutcome> {
    let mut rng = Rng::new(seed);
    let c: RMatrix = random_gaussian(&mut rng, n);
    let d: RMatrix = random_gaussian(&mut rng, n);
    let m = embed_orthogonal_pair(&c, &d)?;
    let det = log_det(&m);
    let (_, neg) = nonnegativity_defects(&det, m.log_hadamard_bound());
    let mut t = Trial::new();
    t.check("ineq_negative", neg, tol.oracle);
    let (plus, minus) = unitary_split_det(&BlockPair::new(c, d, SymplecticKind::RealSymplectic)?)?;
    t.check("split_identity", det.relative_distance(&plus.modulus_sqr()), tol.oracle);
    t.check("split_conjugate", minus.relative_distance(&plus.conj()), tol.oracle);
    Ok(t.finish())
}

fn conj_formula_trial(seed: u64, n: usize, tol: &ToleranceConfig) -> sympdet_core::Result<TrialOutcome> {
    let config = GeneratorConfig::new(SymplecticKind::ConjugateSymplectic, n, seed);
    let a: CMatrix = generators::generate_seeded(&config)?;
    let oracle = log_det(&a);
    let phase = symplectic::conj_symplectic_det_formula(&a, tol)?;
    let mut t = Trial::new();
    t.check("det_unit_modulus", (oracle.magnitude() - 1.0).abs(), tol.determinant);
    t.check(
        "formula_phase_angle",
        oracle.phase_angle_to(&LogDet::from_parts(0.0, phase)),
        tol.phase,
    );
    t.check("formula_unit_modulus", (phase.norm() - 1.0).abs(), tol.determinant);
    Ok(t.finish())
}

fn generator_sanity_trial(
    seed: u64,
    n: usize,
    tol: &ToleranceConfig,
) -> sympdet_core::Result<TrialOutcome> {
    let mut t = Trial::new();
    for kind in SymplecticKind::ALL {
        let config = GeneratorConfig::new(kind, n, seed);
        match kind {
            SymplecticKind::RealSymplectic => sanity_one::<f64>(&mut t, &config, tol)?,
            _ => sanity_one::<C64>(&mut t, &config, tol)?,
        }
    }
    Ok(t.finish())
}

fn sanity_one<T: Scalar<Real = f64>>(
    t: &mut Trial,
    config: &GeneratorConfig,
    tol: &ToleranceConfig,
) -> sympdet_core::Result<()> {
    let kind = config.target;
    let name = kind.as_str();
    let (a, factors) = generators::generate_with_factors::<T>(config, &mut Rng::new(config.seed))?;
    let worst_factor = factors
        .iter()
        .map(|(_, f)| membership_residual(f, kind))
        .collect::<sympdet_core::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    t.check(&format!("{name}_factor_residual"), worst_factor, tol.exact);
    t.check(
        &format!("{name}_membership"),
        membership_residual(&a, kind)?,
        membership_threshold(&a, GENERATED_MEMBERSHIP),
    );
    let det = log_det(&a);
    if kind == SymplecticKind::ConjugateSymplectic {
        t.check(&format!("{name}_det_unit_modulus"), (det.magnitude() - 1.0).abs(), tol.determinant);
    } else {
        t.check(&format!("{name}_det_minus_one"), det.distance_to(Complex::new(1.0, 0.0)), tol.determinant);
    }
    let again: SquareMatrix<T> = generators::generate_seeded(config)?;
    t.check(&format!("{name}_determinism"), if again == a { 0.0 } else { 1.0 }, 0.0);
    Ok(())
}
