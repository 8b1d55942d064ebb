use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational finding that never counts as a failure.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        })
    }
}

/// Outcome of one check on one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub case: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    pub fn new(check: &str, case: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> Self {
        CheckResult {
            check: check.to_string(),
            case: case.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: if ok { String::new() } else { detail() },
        }
    }

    pub fn info(check: &str, case: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            check: check.to_string(),
            case: case.into(),
            status: Status::Info,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Side-by-side rendering for a failed equality.
pub fn mismatch(lhs: &str, rhs: &str) -> String {
    format!("lhs = {lhs}; rhs = {rhs}")
}
