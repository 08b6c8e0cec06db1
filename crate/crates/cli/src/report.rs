//! JSON reports. Schema version 1:
//!
//! ```text
//! { "version": 1,
//!   "scenario": { "file", "kind", "name", "field", "parameters" },
//!   "checks": [ { "name", "status", "lhs", "rhs", "precision", "tolerance", "margin", "detail" } ],
//!   "summary": { "passed", "failed", "unsupported", "total" },
//!   "duration_ms": f64 }
//! ```
//!
//! Suite reports wrap a list of these under `"reports"` with their own
//! summary and a `"warnings"` list. Everything except `duration_ms` is
//! deterministic.

use serde::Serialize;
use tate_regulator::padic::PAdicElement;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            lhs: None,
            rhs: None,
            precision: None,
            tolerance: None,
            margin: None,
            detail: None,
        }
    }

    pub fn failed(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check::new(name, false).detail(detail)
    }

    pub fn lhs(mut self, v: impl Into<String>) -> Self {
        self.lhs = Some(v.into());
        self
    }

    pub fn rhs(mut self, v: impl Into<String>) -> Self {
        self.rhs = Some(v.into());
        self
    }

    pub fn precision(mut self, v: impl Into<String>) -> Self {
        self.precision = Some(v.into());
        self
    }

    pub fn tolerance(mut self, v: f64) -> Self {
        self.tolerance = Some(v);
        self
    }

    pub fn margin(mut self, v: impl Into<String>) -> Self {
        self.margin = Some(v.into());
        self
    }

    pub fn detail(mut self, v: impl Into<String>) -> Self {
        self.detail = Some(v.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// `value ± error`.
pub fn real(value: f64, error: f64) -> String {
    format!("{value:.15e} ± {error:.1e}")
}

pub fn padic(x: &PAdicElement) -> String {
    x.to_string()
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub unsupported: usize,
    pub total: usize,
}

impl Summary {
    pub fn of(checks: &[Check]) -> Self {
        let mut s = Summary { total: checks.len(), ..Default::default() };
        for c in checks {
            match c.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Unsupported => s.unsupported += 1,
            }
        }
        s
    }

    pub fn merge(&mut self, other: &Summary) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.unsupported += other.unsupported;
        self.total += other.total;
    }

    /// Every check passed and at least one ran.
    pub fn all_passed(&self) -> bool {
        self.total > 0 && self.passed == self.total
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioEcho {
    pub file: Option<String>,
    pub kind: String,
    pub name: Option<String>,
    pub field: Option<String>,
    pub parameters: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub scenario: ScenarioEcho,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub duration_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: u32,
    pub suite: String,
    pub reports: Vec<Report>,
    pub summary: Summary,
    pub warnings: Vec<String>,
    pub duration_ms: f64,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.summary.all_passed())
    }
}

/// A JSON rendering with every `duration_ms` field removed, for determinism checks.
pub fn without_durations<T: Serialize>(report: &T) -> serde_json::Value {
    fn strip(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(map) => {
                map.remove("duration_ms");
                map.values_mut().for_each(strip);
            }
            serde_json::Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v = serde_json::to_value(report).expect("reports serialize");
    strip(&mut v);
    v
}
