//! Structured verification reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Version of the JSON layout of [`VerificationReport`].
pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactTag {
    #[serde(rename = "exact")]
    Exact,
}

/// Either an absolute tolerance or the tag `"exact"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Tolerance {
    Absolute(f64),
    Exact(ExactTag),
}

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance::Exact(ExactTag::Exact);
}

/// One check: its id, outcome, the measured quantity and the tolerance it was held to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub measured: f64,
    pub tolerance: Tolerance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes iff `deviation <= tol` (NaN fails).
    pub fn within(id: impl Into<String>, deviation: f64, tol: f64) -> Self {
        Self {
            id: id.into(),
            status: Status::from_bool(deviation <= tol),
            measured: deviation,
            tolerance: Tolerance::Absolute(tol),
            detail: None,
        }
    }

    /// An exact check; `measured` records the compared quantity.
    pub fn exact(id: impl Into<String>, ok: bool, measured: f64) -> Self {
        Self {
            id: id.into(),
            status: Status::from_bool(ok),
            measured,
            tolerance: Tolerance::EXACT,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<u32> for ParamValue {
    fn from(v: u32) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Float(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_owned())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

/// The record of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format_version: u32,
    pub artifact_version: String,
    pub suite: String,
    pub parameters: BTreeMap<String, ParamValue>,
    pub seed: u64,
    pub timestamp_unix: u64,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64, timestamp_unix: u64) -> Self {
        Self {
            format_version: REPORT_FORMAT_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").to_owned(),
            suite: suite.into(),
            parameters: BTreeMap::new(),
            seed,
            timestamp_unix,
            status: Status::Pass,
            checks: Vec::new(),
            warnings: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<ParamValue>) -> &mut Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn push(&mut self, check: Check) {
        if !check.passed() {
            self.status = Status::Fail;
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
