//! Pass/fail bookkeeping for checks run by the CLI and the suites.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes when `max_violation <= tolerance`; NaN fails.
    pub fn measure(name: impl Into<String>, max_violation: f64, tolerance: f64) -> Self {
        Self { name: name.into(), max_violation, tolerance, passed: max_violation <= tolerance, detail: None }
    }

    /// A yes/no check; violation is 0 or 1.
    pub fn flag(name: impl Into<String>, passed: bool) -> Self {
        Self { name: name.into(), max_violation: if passed { 0.0 } else { 1.0 }, tolerance: 0.0, passed, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Both must pass; keeps the worse violation.
    pub fn and(mut self, other: Check) -> Self {
        self.passed &= other.passed;
        if other.max_violation > self.max_violation || other.max_violation.is_nan() {
            self.max_violation = other.max_violation;
            self.tolerance = other.tolerance;
        }
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} (max violation {:.3e}, tol {:.1e})", self.name, self.max_violation, self.tolerance)?;
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), checks: Vec::new(), passed: true, data: None }
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    /// Appends another report's checks.
    pub fn merge(&mut self, other: Report) {
        self.extend(other.checks);
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "$ {}", self.command)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        write!(f, "overall: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}
