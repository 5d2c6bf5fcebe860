//! Verdicts and reports shared by every checker.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Outcome of one check. The order matters: aggregation takes the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub status: Status,
    pub detail: String,
}

/// Only this many findings are kept per check; the counters stay exact.
pub const MAX_FINDINGS: usize = 12;

/// One axiom or law, evaluated over many instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub instances: u64,
    pub failures: u64,
    pub inconclusive: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Finding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            instances: 0,
            failures: 0,
            inconclusive: 0,
            findings: Vec::new(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn pass(&mut self) {
        self.instances += 1;
    }

    pub fn fail(&mut self, detail: impl Into<String>) {
        self.instances += 1;
        self.failures += 1;
        self.status = self.status.max(Status::Fail);
        self.push(Status::Fail, detail.into());
    }

    pub fn inconclusive(&mut self, detail: impl Into<String>) {
        self.instances += 1;
        self.inconclusive += 1;
        self.status = self.status.max(Status::Inconclusive);
        self.push(Status::Inconclusive, detail.into());
    }

    /// Records one instance with the given outcome.
    pub fn record(&mut self, status: Status, detail: impl FnOnce() -> String) {
        match status {
            Status::Pass => self.pass(),
            Status::Fail => self.fail(detail()),
            Status::Inconclusive => self.inconclusive(detail()),
        }
    }

    fn push(&mut self, status: Status, detail: String) {
        if self.findings.len() < MAX_FINDINGS {
            self.findings.push(Finding { status, detail });
        }
    }

    /// Folds another check's counters and findings into this one.
    pub fn absorb(&mut self, other: Check) {
        self.instances += other.instances;
        self.failures += other.failures;
        self.inconclusive += other.inconclusive;
        self.status = self.status.max(other.status);
        for f in other.findings {
            self.push(f.status, f.detail);
        }
    }
}

/// A named list of checks, possibly with nested sub-reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), checks: Vec::new(), children: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn child(&mut self, r: Report) {
        self.children.push(r);
    }

    pub fn status(&self) -> Status {
        let own = self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        self.children.iter().map(Report::status).fold(own, Status::max)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Looks a check up by name in this report or any descendant.
    pub fn find(&self, name: &str) -> Option<&Check> {
        self.check(name).or_else(|| self.children.iter().find_map(|c| c.find(name)))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        out.push_str(&format!("{pad}{} [{}]\n", self.subject, self.status()));
        for c in &self.checks {
            out.push_str(&format!(
                "{pad}  {:<28} {:<12} instances={} failures={} inconclusive={}\n",
                c.name,
                c.status.to_string(),
                c.instances,
                c.failures,
                c.inconclusive
            ));
            if let Some(n) = &c.note {
                out.push_str(&format!("{pad}    note: {n}\n"));
            }
            for f in &c.findings {
                out.push_str(&format!("{pad}    {}: {}\n", f.status, f.detail));
            }
        }
        for ch in &self.children {
            ch.render_into(out, depth + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregation_prefers_fail() {
        let mut c = Check::new("x");
        c.pass();
        c.inconclusive("bound");
        assert_eq!(c.status, Status::Inconclusive);
        c.fail("witness");
        assert_eq!(c.status, Status::Fail);
        let mut r = Report::new("r");
        r.push(Check::new("ok"));
        let mut ch = Report::new("child");
        ch.push(c);
        r.child(ch);
        assert_eq!(r.status(), Status::Fail);
    }
}
