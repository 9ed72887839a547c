use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Note,
}

/// One named check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub severity: Severity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            check: check.into(),
            passed: true,
            severity: Severity::Note,
            witness: None,
            detail: detail.into(),
        });
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>, detail: impl Into<String>) {
        self.push_failure(Severity::Error, check, witness, detail);
    }

    pub fn warn(&mut self, check: impl Into<String>, witness: impl Into<String>, detail: impl Into<String>) {
        self.push_failure(Severity::Warning, check, witness, detail);
    }

    pub fn note(&mut self, check: impl Into<String>, detail: impl Into<String>) {
        self.pass(check, detail);
    }

    fn push_failure(
        &mut self,
        severity: Severity,
        check: impl Into<String>,
        witness: impl Into<String>,
        detail: impl Into<String>,
    ) {
        self.checks.push(CheckResult {
            check: check.into(),
            passed: false,
            severity,
            witness: Some(witness.into()),
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// True when no check failed with error severity.
    pub fn ok(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn errors(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed && c.severity == Severity::Error)
    }

    pub fn first_error(&self) -> Option<&CheckResult> {
        self.errors().next()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.passed, self.severity) {
            (true, _) => "PASS",
            (false, Severity::Error) => "FAIL",
            (false, _) => "WARN",
        };
        write!(f, "{tag} {}", self.check)?;
        if let Some(w) = &self.witness {
            write!(f, " [witness {w}]")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
