//! Check records and reports in canonical JSON.

use std::path::Path;

use serde_json::{json, Value};

use crate::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    /// a property failed on a recorded input
    Fail,
    /// an operation returned an error, such as an exhausted search
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    /// the property checked, more specific than the suite anchor
    pub statement: String,
    /// grid point and other parameters of this check
    pub params: Value,
    pub status: Status,
    pub trials: usize,
    pub failures: usize,
    /// inputs of the first failing trial
    pub witness: Option<Value>,
    /// evidence of a pass, when there is something to show
    pub certificate: Option<Value>,
    pub detail: Value,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `name` followed by the parameters, e.g. `necessity n=2 s=3`.
    pub fn label(&self) -> String {
        let mut out = self.name.clone();
        if let Value::Object(map) = &self.params {
            for (k, v) in map {
                out.push_str(&format!(" {k}={v}"));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "statement": self.statement,
            "params": self.params,
            "passed": self.passed(),
            "status": self.status.name(),
            "trials": self.trials,
            "failures": self.failures,
            "witness": self.witness,
            "certificate": self.certificate,
            "detail": self.detail,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub version: String,
    pub suite: String,
    pub anchor: String,
    pub config: Value,
    pub checks: Vec<Check>,
    /// `None` unless timing was requested, so reports stay reproducible
    pub wall_clock_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: impl Into<String>, anchor: impl Into<String>, config: Value) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            suite: suite.into(),
            anchor: anchor.into(),
            config,
            checks: Vec::new(),
            wall_clock_ms: None,
        }
    }

    /// The worst status over all checks.
    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    /// 0 pass, 1 property failure, 3 error.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": self.version,
            "suite": self.suite,
            "anchor": self.anchor,
            "config": self.config,
            "status": self.status().name(),
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "wall_clock_ms": self.wall_clock_ms,
        })
    }

    /// Sorted keys, two-space indent, trailing newline.
    pub fn to_canonical(&self) -> String {
        nilaut::json::canonical(&self.to_json())
    }
}

pub fn emit_report(report: &Report, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_canonical()).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(status: Status) -> Check {
        Check {
            name: "c".into(),
            statement: "s".into(),
            params: json!({"n": 2, "s": 3}),
            status,
            trials: 1,
            failures: usize::from(status != Status::Pass),
            witness: None,
            certificate: None,
            detail: Value::Null,
        }
    }

    #[test]
    fn empty_report_skeleton() {
        let r = Report::new("walk", "a", json!({}));
        let v = r.to_json();
        assert_eq!(v["checks"], json!([]));
        assert_eq!(v["status"], json!("pass"));
        assert_eq!(v["wall_clock_ms"], Value::Null);
        assert!(r.to_canonical().starts_with("{\n  \"anchor\""));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn worst_status_wins() {
        let mut r = Report::new("walk", "a", json!({}));
        r.checks = vec![check(Status::Pass), check(Status::Fail)];
        assert_eq!(r.exit_code(), 1);
        r.checks.push(check(Status::Error));
        assert_eq!(r.exit_code(), 3);
        assert_eq!(r.checks[0].label(), "c n=2 s=3");
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let r = Report::new("walk", "a", json!({}));
        let err = emit_report(&r, Path::new("/nonexistent-dir/x/report.json")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x/report.json"));
        assert_eq!(err.exit_code(), 3);
    }
}
