use std::path::{Path, PathBuf};
use std::process::Command;

use tatereg::{run, run_file, run_suite, without_durations, CliError, Kind, Overrides, Scenario, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tatereg"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tatereg-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, file: &str, text: &str) -> PathBuf {
    let p = dir.join(file);
    std::fs::write(&p, text).unwrap();
    p
}

const PROP_SA: &str = r#"
kind = "prop-sa"
[field]
p = 5
precision = 20
[parameters]
a = 1
b = 2
r = 3
"#;

#[test]
fn every_kind_round_trips_through_its_name() {
    for k in Kind::ALL {
        assert_eq!(k.name().parse::<Kind>().unwrap(), k);
    }
}

#[test]
fn parameters_and_defaults() {
    let s = Scenario::parse(PROP_SA).unwrap();
    assert_eq!(s.kind, Kind::PropSa);
    assert_eq!(s.precision(&Overrides::default()), 20);
    assert_eq!(s.precision(&Overrides { precision: Some(12), nu: None }), 12);
    let r = run(&s, None, Overrides::default());
    assert!(r.summary.all_passed(), "{:#?}", r.checks);
    assert_eq!(r.scenario.parameters["b"], 2);
}

#[test]
fn malformed_file_reports_line_and_column() {
    let err = Scenario::parse("kind = \"prop-sa\"\n[parameters\n").unwrap_err();
    let CliError::Parse(msg) = err else { panic!("{err:?}") };
    assert!(msg.contains("line 2"), "{msg}");
    assert!(msg.contains("column"), "{msg}");
}

#[test]
fn unknown_kind_and_field_keys_are_rejected() {
    assert!(matches!(Scenario::parse("kind = \"nope\""), Err(CliError::UnsupportedKind(k)) if k == "nope"));
    assert!(matches!(Scenario::parse("kind = \"o-k\"\n[field]\nprime = 5\n"), Err(CliError::Parse(_))));
}

#[test]
fn bad_parameters_become_failed_checks() {
    let s = Scenario::parse("kind = \"prop-sa\"\n[parameters]\na = \"one\"\n").unwrap();
    let r = run(&s, None, Overrides::default());
    assert_eq!(r.checks.len(), 1);
    assert_eq!(r.checks[0].status, Status::Fail);
    let s = Scenario::parse("kind = \"galois-beta\"\n[parameters]\nl = 5\nm = 4\n").unwrap();
    assert!(!run(&s, None, Overrides::default()).summary.all_passed());
}

#[test]
fn a_wrong_expectation_fails() {
    let s = Scenario::parse("kind = \"o-k\"\n[field]\nprecision = 20\n[parameters]\nexpected = 3\n").unwrap();
    let r = run(&s, None, Overrides::default());
    assert_eq!(r.summary.failed, 1);
}

#[test]
fn empty_suite_warns_and_passes() {
    let dir = scratch("empty");
    let s = run_suite(&dir, 2, Overrides::default()).unwrap();
    assert!(s.reports.is_empty());
    assert_eq!(s.warnings.len(), 1);
    let out = bin().arg("suite").arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn mixed_suite_is_ordered_and_fails() {
    let dir = scratch("mixed");
    write(&dir, "b-good.toml", PROP_SA);
    write(&dir, "a-bad.toml", "kind = \"o-k\"\n[field]\nprecision = 20\n[parameters]\nexpected = 3\n");
    write(&dir, "c-broken.toml", "kind = ");
    write(&dir, "notes.txt", "ignored");
    let s = run_suite(&dir, 3, Overrides::default()).unwrap();
    let files: Vec<_> = s.reports.iter().map(|r| r.scenario.file.clone().unwrap()).collect();
    assert_eq!(files, ["a-bad.toml", "b-good.toml", "c-broken.toml"]);
    assert!(!s.all_passed());
    assert!(s.reports[1].summary.all_passed());
    assert_eq!(s.reports[2].checks[0].name, "load");
    let again = run_suite(&dir, 1, Overrides::default()).unwrap();
    assert_eq!(without_durations(&s), without_durations(&again));
    let out = bin().args(["suite", "--jobs", "2"]).arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes_and_report_file() {
    let dir = scratch("run");
    let good = write(&dir, "good.toml", PROP_SA);
    let out_file = dir.join("report.json");
    let out = bin().arg("run").arg(&good).arg("--out").arg(&out_file).args(["--nu", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_file).unwrap()).unwrap();
    assert_eq!(json["version"], 1);
    assert_eq!(json["scenario"]["kind"], "prop-sa");
    assert_eq!(json["checks"][0]["precision"], "mod p^3-th powers");
    let broken = write(&dir, "broken.toml", "kind = \"o-k\"\n[parameters\n");
    assert_eq!(bin().arg("run").arg(&broken).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("run").arg(dir.join("missing.toml")).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("frobnicate").output().unwrap().status.code(), Some(2));
    let kinds = bin().arg("list-kinds").output().unwrap();
    assert_eq!(String::from_utf8_lossy(&kinds.stdout).lines().count(), Kind::ALL.len());
}

#[test]
fn bundled_scenarios_load() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let files = tatereg::suite_files(&dir).unwrap();
    assert!(files.len() >= 10);
    for f in files {
        Scenario::load(&f).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
    }
    assert!(run_file(&dir.join("missing.toml"), Overrides::default()).is_err());
}
