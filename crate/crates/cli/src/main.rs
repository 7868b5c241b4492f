use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use sympdet_cli::report::{emit_report, Format, Report};
use sympdet_cli::suites::{parse_half_dims, replay, run_suite, SuiteId, SuiteSpec};
use sympdet_cli::certify_file;
use sympdet_core::{SymplecticKind, ToleranceConfig};

#[derive(Parser)]
#[command(name = "sympdet")]
#[command(about = "Numerical certificates for determinants of symplectic matrices")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Output {
    /// Tolerance override: a bare number sets every residual threshold,
    /// NAME=VALUE sets one (exact, membership, identity, determinant, phase,
    /// oracle, formula_floor). Repeatable.
    #[arg(long = "tol", value_name = "TOL")]
    tol: Vec<String>,

    /// Report format: text | json
    #[arg(long, default_value = "text")]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites (`all` runs every suite)
    Suite {
        /// form-identities, real-theorem, complex-theorem, lemma, ineq-real,
        /// conj-formula, generator-sanity, or all
        #[arg(required = true)]
        suites: Vec<String>,

        /// Half-dimensions N: `4`, `1..8` or `1,2,4`; trials cycle through them
        #[arg(long)]
        n: Option<String>,

        /// Number of trials per suite
        #[arg(long)]
        trials: Option<usize>,

        /// Base seed; with --replay, the trial seed from a failure entry
        #[arg(long, default_value_t = 42)]
        seed: u64,

        /// Re-run the single trial identified by --seed and --n
        #[arg(long)]
        replay: bool,

        #[command(flatten)]
        output: Output,
    },
    /// Certify the matrix in FILE
    Certify {
        file: PathBuf,

        /// real | complex | conjugate (default: from the file's scalar kind)
        #[arg(long)]
        mode: Option<SymplecticKind>,

        #[command(flatten)]
        output: Output,
    },
    /// Evaluate the conjugate symplectic determinant formula for FILE
    Formula {
        file: PathBuf,

        #[command(flatten)]
        output: Output,
    },
}

fn tolerances(overrides: &[String]) -> Result<ToleranceConfig> {
    let mut tol = ToleranceConfig::default();
    for item in overrides {
        match item.split_once('=') {
            Some((name, value)) => {
                let v: f64 = value.parse().with_context(|| format!("bad tolerance {item:?}"))?;
                if !tol.set(name, v) {
                    bail!("unknown tolerance {name:?}");
                }
            }
            None => {
                let v: f64 = item.parse().with_context(|| format!("bad tolerance {item:?}"))?;
                tol = tol.with_uniform(v);
            }
        }
    }
    Ok(tol)
}

fn suites(names: &[String]) -> Result<Vec<SuiteId>> {
    if names.iter().any(|n| n == "all") {
        return Ok(SuiteId::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| n.parse::<SuiteId>().map_err(anyhow::Error::msg))
        .collect()
}

fn run(cli: Cli) -> Result<bool> {
    let (reports, output): (Vec<Report>, Output) = match cli.command {
        Command::Suite {
            suites: names,
            n,
            trials,
            seed,
            replay: replay_mode,
            output,
        } => {
            let tol = tolerances(&output.tol)?;
            let dims = n.as_deref().map(parse_half_dims).transpose().map_err(anyhow::Error::msg)?;
            let mut reports = Vec::new();
            for id in suites(&names)? {
                if replay_mode {
                    let Some([n]) = dims.as_deref() else {
                        bail!("--replay needs exactly one half-dimension in --n");
                    };
                    reports.push(replay(id, seed, *n, &tol));
                    continue;
                }
                let mut spec = SuiteSpec::new(id);
                spec.seed = seed;
                spec.tolerances = tol;
                if let Some(t) = trials {
                    spec.trials = t;
                }
                if let Some(d) = &dims {
                    spec.half_dims = d.clone();
                }
                spec.validate().map_err(anyhow::Error::msg)?;
                reports.push(run_suite(&spec));
            }
            (reports, output)
        }
        Command::Certify { file, mode, output } => {
            let tol = tolerances(&output.tol)?;
            (vec![certify_file(&file, mode, &tol)?], output)
        }
        Command::Formula { file, output } => {
            let tol = tolerances(&output.tol)?;
            let report = certify_file(&file, Some(SymplecticKind::ConjugateSymplectic), &tol)?;
            (vec![report], output)
        }
    };
    emit_report(&reports, output.format, output.out.as_deref())
        .with_context(|| "cannot write report")?;
    Ok(reports.iter().all(Report::all_passed))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
