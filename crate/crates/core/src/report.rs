//! Structured check reports shared by every suite.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

/// One executed check. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub got: String,
    pub details: String,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(suite: &str) -> Self {
        CheckReport { suite: suite.to_string(), checks: Vec::new() }
    }

    /// Records a check whose status is `pass` iff `ok`.
    pub fn record(
        &mut self,
        id: &str,
        ok: bool,
        expected: impl fmt::Display,
        got: impl fmt::Display,
        anchor: &str,
    ) -> &mut Check {
        self.checks.push(Check {
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            got: got.to_string(),
            details: String::new(),
            anchor: anchor.to_string(),
        });
        self.checks.last_mut().unwrap()
    }

    /// Records an equality check.
    pub fn expect_eq<T: PartialEq + fmt::Display>(&mut self, id: &str, expected: T, got: T, anchor: &str) -> &mut Check {
        let ok = expected == got;
        self.record(id, ok, expected, got, anchor)
    }

    pub fn skip(&mut self, id: &str, details: &str, anchor: &str) {
        self.checks.push(Check {
            id: id.to_string(),
            status: Status::Skip,
            expected: String::new(),
            got: String::new(),
            details: details.to_string(),
            anchor: anchor.to_string(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Appends another report's checks, prefixing their ids with its suite name.
    pub fn absorb(&mut self, other: CheckReport) {
        for mut c in other.checks {
            c.id = format!("{}.{}", other.suite, c.id);
            self.checks.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}: expected {}, got {}", c.status, c.id, c.expected, c.got));
            if !c.details.is_empty() {
                out.push_str(&format!(" ({})", c.details));
            }
            out.push('\n');
        }
        let fails = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), fails));
        out
    }
}

impl Check {
    pub fn with_details(&mut self, details: impl Into<String>) -> &mut Self {
        self.details = details.into();
        self
    }
}
