//! Scenario files: a `kind`, an optional `[field]` table and a `[parameters]` table.
//!
//! ```toml
//! kind = "prop-sa"
//! name = "xi_L for (1, 2, 3)"
//!
//! [field]
//! p = 5
//! precision = 30
//!
//! [parameters]
//! a = 1
//! b = 2
//! r = 3
//! nu = 2
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tate_regulator::padic::FieldSpec;

use crate::CliError;

/// Precision used when neither the scenario, the flag nor the environment gives one.
pub const DEFAULT_PRECISION: u32 = 30;
/// Environment variable overriding [`DEFAULT_PRECISION`].
pub const PRECISION_ENV: &str = "TATEREG_PRECISION";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    ThetaIdentities,
    Weierstrass,
    PropSa,
    LemmaF0,
    LemmaF1,
    FormulaTable,
    OK,
    WeilReciprocity,
    Bloch2cor,
    FiveTermSweep,
    DistributionSweep,
    GaloisBeta,
    HilbertTorsion,
}

impl Kind {
    pub const ALL: [Kind; 13] = [
        Kind::ThetaIdentities,
        Kind::Weierstrass,
        Kind::PropSa,
        Kind::LemmaF0,
        Kind::LemmaF1,
        Kind::FormulaTable,
        Kind::OK,
        Kind::WeilReciprocity,
        Kind::Bloch2cor,
        Kind::FiveTermSweep,
        Kind::DistributionSweep,
        Kind::GaloisBeta,
        Kind::HilbertTorsion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::ThetaIdentities => "theta-identities",
            Kind::Weierstrass => "weierstrass",
            Kind::PropSa => "prop-sa",
            Kind::LemmaF0 => "lemma-f0",
            Kind::LemmaF1 => "lemma-f1",
            Kind::FormulaTable => "formula-table",
            Kind::OK => "o-k",
            Kind::WeilReciprocity => "weil-reciprocity",
            Kind::Bloch2cor => "bloch2cor",
            Kind::FiveTermSweep => "five-term-sweep",
            Kind::DistributionSweep => "distribution-sweep",
            Kind::GaloisBeta => "galois-beta",
            Kind::HilbertTorsion => "hilbert-torsion",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Kind::ThetaIdentities => "theta functional equation and reflection on a coefficient window",
            Kind::Weierstrass => "Weierstrass identity for the X, Y series on a window",
            Kind::PropSa => "tau_infty(xi_L) against its closed form, with o_K",
            Kind::LemmaF0 => "tau_infty of a root-of-unity theta symbol against S-values",
            Kind::LemmaF1 => "both closed forms for the q0-shifted theta symbol",
            Kind::FormulaTable => "tau-hat on generator symbols against c^-1, 1, 1, S(pi0^(i-j))",
            Kind::OK => "ord of tau_infty(xi_L), stable across nu",
            Kind::WeilReciprocity => "product of all tame symbols of random rational pairs",
            Kind::Bloch2cor => "contour regulator of eta_0 against delta-bar and D2",
            Kind::FiveTermSweep => "D2 on random five-term relations",
            Kind::DistributionSweep => "D2 on distribution relations",
            Kind::GaloisBeta => "Galois action on beta_1, beta_2",
            Kind::HilbertTorsion => "torsion shape from tame Hilbert symbols",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| CliError::UnsupportedKind(s.to_string()))
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: Option<u64>,
    pub precision: Option<u32>,
    pub poly: Option<Vec<i64>>,
    pub base: Option<Vec<i64>>,
    pub top: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    kind: String,
    name: Option<String>,
    #[serde(default)]
    field: FieldSection,
    #[serde(default)]
    parameters: toml::Table,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub kind: Kind,
    pub name: Option<String>,
    pub field: FieldSection,
    pub parameters: toml::Table,
}

/// Flag-level overrides applied on top of a scenario file.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub precision: Option<u32>,
    pub nu: Option<u32>,
}

fn env_precision() -> Option<u32> {
    std::env::var(PRECISION_ENV).ok().and_then(|v| v.trim().parse().ok())
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(Scenario { kind: raw.kind.parse()?, name: raw.name, field: raw.field, parameters: raw.parameters })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Precision: flag, then file, then environment, then the default.
    pub fn precision(&self, overrides: &Overrides) -> u32 {
        overrides.precision.or(self.field.precision).or_else(env_precision).unwrap_or(DEFAULT_PRECISION)
    }

    pub fn field_spec(&self, overrides: &Overrides) -> Result<FieldSpec, CliError> {
        let f = &self.field;
        let p = f.p.unwrap_or(5);
        let precision = self.precision(overrides);
        let spec = match (&f.poly, &f.base, &f.top) {
            (None, None, None) => FieldSpec::qp(p, precision),
            (Some(poly), None, None) => FieldSpec::new(p, poly, precision),
            (None, base, top) => FieldSpec::tower(
                p,
                base.as_deref().unwrap_or(&[0, 1]),
                top.as_deref().unwrap_or(&[-(p as i64), 1]),
                precision,
            ),
            _ => return Err(CliError::Parse("give either poly or base/top in [field]".into())),
        };
        spec.map_err(|e| CliError::Parse(format!("[field]: {e}")))
    }
}

/// Typed access to the `[parameters]` table with defaults.
pub struct Params<'a> {
    table: &'a toml::Table,
    overrides: Overrides,
}

impl<'a> Params<'a> {
    pub fn new(table: &'a toml::Table, overrides: Overrides) -> Self {
        Params { table, overrides }
    }

    pub fn int(&self, key: &str, default: i64) -> Result<i64, CliError> {
        match self.table.get(key) {
            None => Ok(default),
            Some(toml::Value::Integer(v)) => Ok(*v),
            Some(v) => Err(CliError::Parameter(format!("`{key}` must be an integer, got {v}"))),
        }
    }

    pub fn float(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.table.get(key) {
            None => Ok(default),
            Some(toml::Value::Float(v)) => Ok(*v),
            Some(toml::Value::Integer(v)) => Ok(*v as f64),
            Some(v) => Err(CliError::Parameter(format!("`{key}` must be a number, got {v}"))),
        }
    }

    pub fn ints(&self, key: &str, default: &[i64]) -> Result<Vec<i64>, CliError> {
        match self.table.get(key) {
            None => Ok(default.to_vec()),
            Some(toml::Value::Array(items)) => items
                .iter()
                .map(|v| v.as_integer().ok_or_else(|| CliError::Parameter(format!("`{key}` must hold integers"))))
                .collect(),
            Some(v) => Err(CliError::Parameter(format!("`{key}` must be an array, got {v}"))),
        }
    }

    /// `ν`, with the `--nu` flag taking precedence.
    pub fn nu(&self) -> Result<u32, CliError> {
        match self.overrides.nu {
            Some(v) => Ok(v),
            None => u32::try_from(self.int("nu", 2)?).map_err(|_| CliError::Parameter("`nu` must be non-negative".into())),
        }
    }
}
