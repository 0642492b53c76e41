//! Pass/fail reports produced by the verification suites.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Informational line; never affects the verdict.
    Note,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Note => "NOTE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub suite: String,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn record(
        &mut self,
        suite: &str,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) {
        self.items.push(CheckItem {
            suite: suite.to_owned(),
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, suite: &str, name: impl Into<String>, detail: impl Into<String>) {
        self.items.push(CheckItem {
            suite: suite.to_owned(),
            name: name.into(),
            status: Status::Note,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            write!(f, "{} {}: {}", item.status, item.suite, item.name)?;
            if !item.detail.is_empty() {
                write!(f, " [{}]", item.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
