use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Outcome of one named verification.
///
/// `pass` is true exactly when `first_failure_degree` is absent. For checks
/// that are not indexed by a degree (index windows, ε ranges) the field holds
/// the first failing index instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub parameters: BTreeMap<String, String>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure_degree: Option<usize>,
    #[serde(default)]
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub label: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure_degree: Option<usize>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            parameters: BTreeMap::new(),
            pass: true,
            first_failure_degree: None,
            elapsed_ms: 0,
            cases: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Records one case; `failure` is the first failing degree, if any.
    pub fn record(&mut self, label: impl Into<String>, failure: Option<usize>) {
        if let Some(d) = failure {
            if self.pass {
                self.pass = false;
                self.first_failure_degree = Some(d);
            }
        }
        self.cases.push(CaseResult {
            label: label.into(),
            pass: failure.is_none(),
            first_failure_degree: failure,
        });
    }

    /// Folds another report in as a single case.
    pub fn absorb(&mut self, other: &VerificationReport) {
        self.record(other.check.clone(), other.first_failure_degree);
    }

    pub fn failed_cases(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.check)?;
        if !self.parameters.is_empty() {
            let params: Vec<String> = self
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, " [{}]", params.join(", "))?;
        }
        if let Some(d) = self.first_failure_degree {
            write!(f, " first failure at {d}")?;
        }
        write!(f, " ({} ms)", self.elapsed_ms)
    }
}

/// Runs `f` and stamps the wall-clock time on its report.
pub fn timed<E>(
    f: impl FnOnce() -> Result<VerificationReport, E>,
) -> Result<VerificationReport, E> {
    let start = Instant::now();
    let mut report = f()?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
