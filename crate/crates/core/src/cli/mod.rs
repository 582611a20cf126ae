//! Experiment runner behind the `semilab` binary.

pub mod config;
pub mod registry;
pub mod report;

use std::path::{Path, PathBuf};

use crate::LabError;

pub use config::ExperimentConfig;
pub use registry::{find, Experiment, REGISTRY};
pub use report::{CheckedVerdict, ExperimentReport};

/// Default output directory when neither flag, env nor config sets one.
pub const DEFAULT_OUT: &str = "semilab-out";
pub const OUT_ENV: &str = "SEMILAB_OUT";
pub const SEED: u64 = 0;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Numerical(_) | CliError::Io(_) => 4,
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the env var and the config.
    pub out: Option<PathBuf>,
    pub degree: Option<usize>,
    /// Overrides `tolerances.ode_tol`.
    pub tol: Option<f64>,
    pub quiet: bool,
}

/// Output directory with precedence flag > `SEMILAB_OUT` > config > default.
pub fn output_dir(cfg: &ExperimentConfig, opts: &RunOptions) -> PathBuf {
    if let Some(p) = &opts.out {
        return p.clone();
    }
    if let Some(p) = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(p);
    }
    cfg.output.dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

fn apply_expectations(cfg: &ExperimentConfig, verdicts: &mut [CheckedVerdict]) {
    for v in verdicts {
        let hit = cfg.expect.get(&v.label).or_else(|| cfg.expect.get(&v.result.criterion_id));
        if let Some(e) = hit {
            v.expected = Some(*e);
            v.recheck();
        }
    }
}

/// Runs the experiment without touching the file system.
pub fn evaluate(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<(ExperimentReport, Vec<report::Table>), CliError> {
    let mut cfg = cfg.clone();
    if let Some(d) = opts.degree {
        cfg.grids.resolution.degree = d;
    }
    if let Some(t) = opts.tol {
        cfg.tolerances.ode_tol = t;
    }
    cfg.validate()?;
    let exp = find(&cfg.experiment).ok_or_else(|| CliError::Validation(cfg.experiment.clone()))?;
    let ctx = registry::Context { cfg: &cfg, res: cfg.grids.resolution.clone(), tol: cfg.tolerances.clone() };
    let mut outcome = exp.run(&ctx)?;
    apply_expectations(&cfg, &mut outcome.verdicts);
    let mismatches = outcome.verdicts.iter().filter(|v| v.matches == Some(false)).count();
    let report = ExperimentReport {
        experiment: exp.id.to_string(),
        anchor: exp.anchor.to_string(),
        provenance: report::Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_sha256: cfg.digest(),
            seed: SEED,
        },
        resolution: cfg.grids.resolution.describe(),
        verdicts: outcome.verdicts,
        tables: outcome.tables.iter().map(|t| format!("{}.csv", t.name)).collect(),
        mismatches,
        exit_code: i32::from(mismatches > 0),
    };
    Ok((report, outcome.tables))
}

/// Runs the experiment and writes `report.json` and the CSV tables.
pub fn run(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<ExperimentReport, CliError> {
    let (report, tables) = evaluate(cfg, opts)?;
    let dir = output_dir(cfg, opts);
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    for t in &tables {
        t.write(&dir, &report.provenance.config_sha256)?;
    }
    report.write(&dir)?;
    Ok(report)
}

pub fn run_file(path: &Path, opts: &RunOptions) -> Result<ExperimentReport, CliError> {
    let cfg = ExperimentConfig::load(path)?;
    run(&cfg, opts)
}

pub fn list() -> String {
    REGISTRY.iter().map(|e| format!("{:<28} {}\n", e.id, e.anchor)).collect()
}

pub fn describe(id: &str) -> Option<String> {
    let e = find(id)?;
    Some(format!(
        "{}\n  {}\n\n  {}\n\n{}\n\nexpected: {}\ntables: {}\n",
        e.id,
        e.anchor,
        e.quote,
        e.description,
        e.expected,
        e.tables.join(", ")
    ))
}

/// One line per verdict, for terminal output.
pub fn summarize(report: &ExperimentReport) -> String {
    let mut s = String::new();
    for v in &report.verdicts {
        let status = match v.matches {
            Some(true) => "ok",
            Some(false) => "MISMATCH",
            None => "-",
        };
        s.push_str(&format!("{:<9} {:<12} {}\n", status, v.result.verdict.as_str(), v.label));
    }
    s.push_str(&format!("{} mismatch(es), exit {}\n", report.mismatches, report.exit_code));
    s
}
