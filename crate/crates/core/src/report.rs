//! Machine-readable verification reports.
//!
//! Every verification entry point produces a [`Report`]: a named list of
//! [`Check`]s plus enough metadata to reproduce the run.  Reports serialize
//! to JSON with a stable field order and stable check order (checks are
//! sorted by name), so identical inputs produce byte-identical output.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Residual magnitude of a check: either a floating-point size or the marker
/// `"exact-zero"` for identities verified in exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Residual {
    ExactZero,
    Value(f64),
}

impl Serialize for Residual {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Residual::ExactZero => s.serialize_str("exact-zero"),
            Residual::Value(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Residual {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) if t == "exact-zero" => Ok(Residual::ExactZero),
            Raw::Text(t) => Err(D::Error::custom(format!(
                "residual must be a number or \"exact-zero\", got \"{t}\""
            ))),
            Raw::Number(v) => Ok(Residual::Value(v)),
        }
    }
}

/// One named verification with its outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Residual,
    pub detail: String,
}

impl Check {
    /// Passing check certified by exact (rational or symbolic) arithmetic.
    pub fn exact_zero(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Pass,
            residual: Residual::ExactZero,
            detail: detail.into(),
        }
    }

    /// Check with a floating-point residual, passing iff `residual <= tol`
    /// (non-finite residuals always fail).
    pub fn numeric(
        name: impl Into<String>,
        residual: f64,
        tol: f64,
        detail: impl Into<String>,
    ) -> Check {
        let status = if residual.is_finite() && residual <= tol {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name: name.into(),
            status,
            residual: Residual::Value(residual),
            detail: detail.into(),
        }
    }

    /// Failing check (used when a computation errors out or a structural
    /// assertion is false, with the explanation in `detail`).
    pub fn failed(name: impl Into<String>, residual: Residual, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Fail,
            residual,
            detail: detail.into(),
        }
    }

    /// Check that was not run; `detail` says why.  The schema requires a
    /// residual value, so skipped checks carry `0.0`.
    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Skip,
            residual: Residual::Value(0.0),
            detail: detail.into(),
        }
    }

    /// Convenience: pass/fail from a boolean with an exact-zero residual on
    /// success and a unit residual on failure.
    pub fn exact(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        if ok {
            Check::exact_zero(name, detail)
        } else {
            Check::failed(name, Residual::Value(1.0), detail)
        }
    }
}

/// A full verification run: the command that produced it, its inputs, and
/// the checks performed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub tool_version: String,
    pub elapsed_ms: u64,
}

impl Report {
    /// Start a report for `command`; call [`Report::finalize`] when done.
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms: 0,
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn push(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) -> &mut Self {
        self.checks.extend(checks);
        self
    }

    /// Sort checks by name and stamp the elapsed wall time.
    pub fn finalize(&mut self, started: Instant) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.elapsed_ms = started.elapsed().as_millis() as u64;
    }

    /// No check failed.  Skipped checks are reported but do not fail a run;
    /// they always carry a `detail` saying why they were not performed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Process exit code convention: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// One-line human summary (for stderr; stdout carries the JSON).
    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} passed, {} failed, {} skipped ({} ms)",
            self.command,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip),
            self.elapsed_ms
        )
    }
}
