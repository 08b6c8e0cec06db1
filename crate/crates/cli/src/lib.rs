//! Scenario runner behind the `tatereg` binary.
//!
//! A scenario is a TOML file naming a [`Kind`] and its parameters. Running it
//! produces a [`Report`] of named checks; a directory of scenarios runs as a
//! suite and produces a [`SuiteReport`].

pub mod report;
pub mod runner;
pub mod scenario;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

pub use report::{without_durations, Check, Report, Status, SuiteReport, Summary};
pub use scenario::{Kind, Overrides, Scenario};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported scenario kind `{0}`")]
    UnsupportedKind(String),
    #[error("{0}")]
    Io(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// Runs a parsed scenario, turning a panic into a failed check.
pub fn run(scenario: &Scenario, file: Option<&Path>, overrides: Overrides) -> Report {
    let start = Instant::now();
    match catch_unwind(AssertUnwindSafe(|| runner::run_scenario(scenario, file, overrides))) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            let checks = vec![Check::failed("panic", msg)];
            Report {
                version: report::SCHEMA_VERSION,
                scenario: runner::echo(scenario, file, overrides),
                summary: Summary::of(&checks),
                checks,
                duration_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        }
    }
}

/// Loads and runs one file.
pub fn run_file(path: &Path, overrides: Overrides) -> Result<Report, CliError> {
    let scenario = Scenario::load(path)?;
    Ok(run(&scenario, Some(path), overrides))
}

/// The `*.toml` files of a directory, sorted by name.
pub fn suite_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every scenario in `dir` on up to `jobs` threads. Files that fail to
/// load appear as reports with a single failed check; report order follows
/// the sorted file names.
pub fn run_suite(dir: &Path, jobs: usize, overrides: Overrides) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let files = suite_files(dir)?;
    let mut warnings = Vec::new();
    if files.is_empty() {
        warnings.push(format!("no scenario files in {}", dir.display()));
    }
    let jobs = jobs.max(1).min(files.len().max(1));
    let mut slots: Vec<Option<Report>> = vec![None; files.len()];
    let next = std::sync::atomic::AtomicUsize::new(0);
    let done = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                let report = run_file(path, overrides).unwrap_or_else(|e| load_failure(path, &e));
                done.lock().expect("no poisoned workers")[i] = Some(report);
            });
        }
    });
    let reports: Vec<Report> = slots.into_iter().map(|r| r.expect("every file ran")).collect();
    let mut summary = Summary::default();
    for r in &reports {
        summary.merge(&r.summary);
    }
    Ok(SuiteReport {
        version: report::SCHEMA_VERSION,
        suite: dir.display().to_string(),
        reports,
        summary,
        warnings,
        duration_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn load_failure(path: &Path, err: &CliError) -> Report {
    let checks = vec![Check::failed("load", err.to_string())];
    Report {
        version: report::SCHEMA_VERSION,
        scenario: report::ScenarioEcho {
            file: path.file_name().map(|f| f.to_string_lossy().into_owned()),
            kind: String::new(),
            name: None,
            field: None,
            parameters: serde_json::Value::Null,
        },
        summary: Summary::of(&checks),
        checks,
        duration_ms: 0.0,
    }
}
