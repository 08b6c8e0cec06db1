use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use tatereg::{run_file, run_suite, Kind, Overrides, Report, SuiteReport};

/// Runs verification scenarios for Tate-curve regulators and prints JSON reports.
#[derive(Parser)]
#[command(name = "tatereg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run {
        file: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Working precision, overriding the file and TATEREG_PRECISION.
        #[arg(long)]
        precision: Option<u32>,
        /// Power-test exponent for K2 comparisons.
        #[arg(long)]
        nu: Option<u32>,
    },
    /// Run every *.toml scenario in a directory.
    Suite {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        nu: Option<u32>,
    },
    /// List the supported scenario kinds.
    ListKinds,
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    match out {
        Some(path) => std::fs::write(path, text + "\n"),
        None => writeln!(std::io::stdout(), "{text}"),
    }
}

fn summarize_run(r: &Report) {
    for c in r.checks.iter().filter(|c| !c.passed()) {
        eprintln!("FAIL {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
    }
    eprintln!("{}/{} checks passed", r.summary.passed, r.summary.total);
}

fn summarize_suite(s: &SuiteReport) {
    for w in &s.warnings {
        eprintln!("warning: {w}");
    }
    for r in &s.reports {
        let verdict = if r.summary.all_passed() { "PASS" } else { "FAIL" };
        eprintln!("{verdict} {} ({}/{})", r.scenario.file.as_deref().unwrap_or("?"), r.summary.passed, r.summary.total);
    }
    eprintln!("{}/{} checks passed", s.summary.passed, s.summary.total);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ListKinds => {
            let mut stdout = std::io::stdout().lock();
            for k in Kind::ALL {
                if writeln!(stdout, "{:<20} {}", k.name(), k.description()).is_err() {
                    break;
                }
            }
            return ExitCode::SUCCESS;
        }
        Command::Run { file, out, precision, nu } => run_file(&file, Overrides { precision, nu }).map(|r| {
            summarize_run(&r);
            (emit(&r, out.as_deref()), r.summary.all_passed())
        }),
        Command::Suite { dir, jobs, out, precision, nu } => run_suite(&dir, jobs, Overrides { precision, nu }).map(|s| {
            summarize_suite(&s);
            (emit(&s, out.as_deref()), s.all_passed())
        }),
    };
    match result {
        Ok((Ok(()), true)) => ExitCode::SUCCESS,
        Ok((Ok(()), false)) => ExitCode::from(1),
        Ok((Err(e), _)) => {
            eprintln!("error writing report: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
