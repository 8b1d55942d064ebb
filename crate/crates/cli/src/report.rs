use std::fmt::Write as _;

use relserre::{CheckResult, Status};
use serde::Serialize;

use crate::config::Suite;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Header {
    pub version: String,
    pub seed: u64,
    pub roster: Vec<String>,
    pub parabolics: String,
    pub suites: Vec<Suite>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub system: String,
    /// 1-based subset such as `{1,3}`; absent for system-wide checks.
    pub parabolic: Option<String>,
    pub suite: Suite,
    pub check: String,
    pub case: String,
    pub status: Status,
    pub detail: String,
}

impl Entry {
    pub fn from_result(system: &str, parabolic: Option<&str>, suite: Suite, r: CheckResult) -> Self {
        Entry {
            system: system.to_string(),
            parabolic: parabolic.map(str::to_string),
            suite,
            check: r.check,
            case: r.case,
            status: r.status,
            detail: r.detail,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    /// Distinct (system, parabolic) pairs visited.
    pub contexts: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub header: Header,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(header: Header, entries: Vec<Entry>, contexts: usize) -> Self {
        let count = |s: Status| entries.iter().filter(|e| e.status == s).count();
        let summary = Summary {
            contexts,
            total: entries.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            info: count(Status::Info),
        };
        Report {
            header,
            entries,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let h = &self.header;
        let m = &self.summary;
        let mut s = String::new();
        let _ = writeln!(s, "# Verification report\n");
        let _ = writeln!(s, "- version: {}", h.version);
        let _ = writeln!(s, "- seed: {}", h.seed);
        let _ = writeln!(s, "- roster: {}", h.roster.join(", "));
        let _ = writeln!(s, "- parabolics: {}", h.parabolics);
        let suites: Vec<&str> = h.suites.iter().map(|x| x.name()).collect();
        let _ = writeln!(s, "- suites: {}\n", suites.join(", "));
        let _ = writeln!(s, "## Summary\n");
        let _ = writeln!(s, "| contexts | total | passed | failed | info |");
        let _ = writeln!(s, "|---|---|---|---|---|");
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |\n",
            m.contexts, m.total, m.passed, m.failed, m.info
        );

        let findings: Vec<&Entry> = self.entries.iter().filter(|e| e.status == Status::Info).collect();
        if !findings.is_empty() {
            let _ = writeln!(s, "## Findings\n");
            for e in findings {
                let _ = writeln!(s, "### {} / {} / {}\n", e.system, e.check, e.case);
                let _ = writeln!(s, "{}\n", e.detail);
            }
        }
        if !self.passed() {
            let _ = writeln!(s, "## Failures\n");
            for e in self.failures() {
                let _ = writeln!(
                    s,
                    "- {} {} {} {} {}: {}",
                    e.system,
                    e.parabolic.as_deref().unwrap_or("(system)"),
                    e.suite,
                    e.check,
                    e.case,
                    e.detail
                );
            }
            s.push('\n');
        }
        let _ = writeln!(s, "## Entries\n");
        let _ = writeln!(s, "| system | parabolic | suite | check | case | status |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for e in &self.entries {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                e.system,
                e.parabolic.as_deref().unwrap_or("(system)"),
                e.suite,
                e.check,
                e.case.replace('|', "\\|"),
                e.status
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let header = Header {
            version: "0.0.0".into(),
            seed: 7,
            roster: vec!["A1".into()],
            parabolics: "all".into(),
            suites: vec![Suite::Serre],
        };
        let entries = vec![
            Entry::from_result(
                "A1",
                Some("{}"),
                Suite::Serre,
                CheckResult::new("c", "[1]", true, String::new),
            ),
            Entry::from_result(
                "A1",
                None,
                Suite::Hecke,
                CheckResult::new("d", "[]", false, || "boom".into()),
            ),
            Entry::from_result("A1", None, Suite::Hecke, CheckResult::info("probe", "pairs", "none")),
        ];
        Report::new(header, entries, 2)
    }

    #[test]
    fn summary_counts() {
        let r = sample();
        assert_eq!(
            r.summary,
            Summary {
                contexts: 2,
                total: 3,
                passed: 1,
                failed: 1,
                info: 1
            }
        );
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn renderings() {
        let r = sample();
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["header"]["seed"], 7);
        assert_eq!(json["entries"][0]["status"], "pass");
        assert_eq!(json["entries"][1]["parabolic"], serde_json::Value::Null);
        assert_eq!(json["summary"]["failed"], 1);
        let md = r.to_markdown();
        assert!(md.contains("## Failures"));
        assert!(md.contains("## Findings"));
        assert!(md.contains("boom"));
    }
}
