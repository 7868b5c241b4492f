//! Thresholds shared by predicates, certificates and the verification suites.

/// Identities that hold exactly up to representation (form identities).
pub const EXACT: f64 = 1e-12;
/// Membership residual, scaled by `max(1, ||A||_F^2)`.
pub const MEMBERSHIP: f64 = 1e-8;
/// Relative error of determinant identities.
pub const IDENTITY: f64 = 1e-9;
/// `|det(A) - 1|` and `| |det(A)| - 1 |`.
pub const DETERMINANT: f64 = 1e-8;
/// Angular agreement of two determinant phases, in radians.
pub const PHASE: f64 = 1e-8;
/// Relative error for checks against the dense LU oracle on Gaussian input.
pub const ORACLE: f64 = 1e-10;
/// Smallest `|det M|` the phase formula will divide by.
pub const FORMULA_FLOOR: f64 = 1e-200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceConfig {
    pub exact: f64,
    pub membership: f64,
    pub identity: f64,
    pub determinant: f64,
    pub phase: f64,
    pub oracle: f64,
    pub formula_floor: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            exact: EXACT,
            membership: MEMBERSHIP,
            identity: IDENTITY,
            determinant: DETERMINANT,
            phase: PHASE,
            oracle: ORACLE,
            formula_floor: FORMULA_FLOOR,
        }
    }
}

impl ToleranceConfig {
    /// Sets every residual threshold except membership and the formula floor.
    pub fn with_uniform(mut self, tol: f64) -> Self {
        self.exact = tol;
        self.identity = tol;
        self.determinant = tol;
        self.phase = tol;
        self.oracle = tol;
        self
    }

    /// Sets one threshold by name. Returns false for an unknown name.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "exact" => &mut self.exact,
            "membership" => &mut self.membership,
            "identity" => &mut self.identity,
            "determinant" => &mut self.determinant,
            "phase" => &mut self.phase,
            "oracle" => &mut self.oracle,
            "formula_floor" | "formulaFloor" => &mut self.formula_floor,
            _ => return false,
        };
        *slot = value;
        true
    }

    pub fn entries(&self) -> [(&'static str, f64); 7] {
        [
            ("exact", self.exact),
            ("membership", self.membership),
            ("identity", self.identity),
            ("determinant", self.determinant),
            ("phase", self.phase),
            ("oracle", self.oracle),
            ("formulaFloor", self.formula_floor),
        ]
    }
}
