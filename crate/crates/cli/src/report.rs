use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use sympdet_core::ToleranceConfig;

pub const TOOL: &str = concat!("sympdet ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportConfig {
    pub seed: u64,
    pub half_dims: Vec<usize>,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    /// True when `seed` is a single trial seed being replayed.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub replay: bool,
}

impl ReportConfig {
    pub fn new(seed: u64, half_dims: Vec<usize>, tol: &ToleranceConfig) -> Self {
        Self {
            seed,
            half_dims,
            tolerances: tol
                .entries()
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            mode: None,
            path: None,
            replay: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub seed: u64,
    pub half_dim: usize,
    pub residuals: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub tool: String,
    pub suite: String,
    pub config: ReportConfig,
    pub trials: u64,
    pub passes: u64,
    pub failures: Vec<Failure>,
    pub worst_residuals: BTreeMap<String, f64>,
    pub elapsed_seconds: f64,
    /// Narrative of a single-matrix certificate (`certify`/`formula` only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.passes == self.trials
    }

    /// Same report with the wall-clock field zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        Report {
            elapsed_seconds: 0.0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected text or json)")),
        }
    }
}

/// Shortest decimal form that parses back to `x`.
fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tool            {}", report.tool);
    let _ = writeln!(out, "suite           {}", report.suite);
    let _ = writeln!(out, "trials          {}", report.trials);
    let _ = writeln!(out, "passes          {}", report.passes);
    let _ = writeln!(out, "elapsedSeconds  {}", num(report.elapsed_seconds));
    let c = &report.config;
    let _ = writeln!(out, "config.seed      {}", c.seed);
    let dims: Vec<String> = c.half_dims.iter().map(|n| n.to_string()).collect();
    let _ = writeln!(out, "config.halfDims  {}", dims.join(","));
    if let Some(mode) = &c.mode {
        let _ = writeln!(out, "config.mode      {mode}");
    }
    if let Some(path) = &c.path {
        let _ = writeln!(out, "config.path      {path}");
    }
    if c.replay {
        let _ = writeln!(out, "config.replay    true");
    }
    for (k, v) in &c.tolerances {
        let _ = writeln!(out, "config.tolerances.{k:<12} {}", num(*v));
    }
    let _ = writeln!(out, "worstResiduals");
    for (k, v) in &report.worst_residuals {
        let _ = writeln!(out, "  {k:<32} {}", num(*v));
    }
    let _ = writeln!(out, "failures        {}", report.failures.len());
    for f in &report.failures {
        let _ = writeln!(out, "  seed={} halfDim={}", f.seed, f.half_dim);
        if let Some(err) = &f.error {
            let _ = writeln!(out, "    error: {err}");
        }
        for (k, v) in &f.residuals {
            let _ = writeln!(out, "    {k:<30} {}", num(*v));
        }
    }
    if let Some(lines) = &report.certificate {
        let _ = writeln!(out, "certificate");
        for line in lines {
            for l in line.lines() {
                let _ = writeln!(out, "  {l}");
            }
        }
    }
    out
}

pub fn render_json(reports: &[Report]) -> serde_json::Result<String> {
    match reports {
        [single] => serde_json::to_string_pretty(single),
        many => serde_json::to_string_pretty(many),
    }
}

pub fn render(reports: &[Report], format: Format) -> serde_json::Result<String> {
    Ok(match format {
        Format::Json => render_json(reports)? + "\n",
        Format::Text => reports
            .iter()
            .map(render_text)
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

/// Writes the reports to `path`, or to stdout when `path` is `None`.
pub fn emit_report(reports: &[Report], format: Format, path: Option<&Path>) -> io::Result<()> {
    let body = render(reports, format).map_err(io::Error::other)?;
    match path {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(failures: Vec<Failure>) -> Report {
        Report {
            tool: TOOL.into(),
            suite: "real-theorem".into(),
            config: ReportConfig::new(42, vec![1, 2], &ToleranceConfig::default()),
            trials: 2,
            passes: 2 - failures.len() as u64,
            failures,
            worst_residuals: BTreeMap::from([("det_minus_one".to_string(), 3.5e-15)]),
            elapsed_seconds: 0.25,
            certificate: None,
        }
    }

    #[test]
    fn empty_failures_serialize_as_empty_array() {
        let json: serde_json::Value =
            serde_json::from_str(&render_json(&[fixture(vec![])]).unwrap()).unwrap();
        assert_eq!(json["failures"], serde_json::json!([]));
        for key in [
            "tool",
            "suite",
            "config",
            "trials",
            "passes",
            "failures",
            "worstResiduals",
            "elapsedSeconds",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(json.get("certificate").is_none());
    }

    #[test]
    fn failure_entry_carries_seed_and_residuals() {
        let failure = Failure {
            seed: 1234,
            half_dim: 2,
            residuals: BTreeMap::from([("det_minus_one".to_string(), 2.0)]),
            error: None,
        };
        let report = fixture(vec![failure]);
        let json: serde_json::Value =
            serde_json::from_str(&render_json(&[report.clone()]).unwrap()).unwrap();
        let entry = &json["failures"][0];
        assert_eq!(entry["seed"], 1234);
        assert_eq!(entry["halfDim"], 2);
        assert_eq!(entry["residuals"]["det_minus_one"], 2.0);
        assert!(!report.all_passed());
        assert!(render_text(&report).contains("seed=1234 halfDim=2"));
    }

    #[test]
    fn json_round_trip() {
        let report = fixture(vec![Failure {
            seed: u64::MAX,
            half_dim: 8,
            residuals: BTreeMap::from([("x".to_string(), 1.0000000000000002)]),
            error: Some("boom".into()),
        }]);
        let text = render_json(&[report.clone()]).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_value(&back).unwrap(), value);
    }

    #[test]
    fn multiple_reports_render_as_array() {
        let r = fixture(vec![]);
        let json: serde_json::Value =
            serde_json::from_str(&render_json(&[r.clone(), r]).unwrap()).unwrap();
        assert_eq!(json.as_array().unwrap().len(), 2);
    }
}
