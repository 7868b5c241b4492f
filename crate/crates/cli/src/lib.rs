//! Verification harness: property suites, single-matrix certification and
//! report rendering for `sympdet`.

pub mod certify;
pub mod report;
pub mod suites;

pub use certify::certify_file;
pub use report::{emit_report, render, Format, Report};
pub use suites::{replay, run_suite, run_trial, SuiteId, SuiteSpec};
