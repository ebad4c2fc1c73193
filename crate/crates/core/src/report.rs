//! Verification reports: JSON form and the text rendering derived from it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ConditionalPass,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ConditionalPass => "conditional-pass",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub computed: String,
    /// Compared modulo a nonzero center or declared central elements.
    pub coset: bool,
    pub matches: bool,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        matches: bool,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            coset: false,
            matches,
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckRecord::new(
            name,
            "true",
            if ok {
                "true".to_string()
            } else {
                detail.into()
            },
            ok,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub target: String,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    pub elapsed_ms: u64,
    pub version: String,
    /// sha256 of every input file the result depends on.
    #[serde(default)]
    pub digests: BTreeMap<String, String>,
    /// Set when a fixture transcription was used.
    #[serde(default)]
    pub conditional: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(target: impl Into<String>) -> Self {
        Report {
            target: target.into(),
            status: Status::Fail,
            checks: Vec::new(),
            elapsed_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
            digests: BTreeMap::new(),
            conditional: false,
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(checks);
    }

    /// Status implied by the checks: a report without checks never passes.
    pub fn derived_status(&self) -> Status {
        if self.checks.is_empty() || self.checks.iter().any(|c| !c.matches) {
            Status::Fail
        } else if self.conditional {
            Status::ConditionalPass
        } else {
            Status::Pass
        }
    }

    pub fn finish(mut self, elapsed: Duration) -> Self {
        self.status = self.derived_status();
        self.elapsed_ms = elapsed.as_millis() as u64;
        self
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.matches)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.target, self.status.as_str());
        for c in &self.checks {
            let mark = if c.matches { "ok  " } else { "FAIL" };
            let coset = if c.coset { " (mod center)" } else { "" };
            if c.matches {
                let _ = writeln!(out, "  {mark} {}: {}{coset}", c.name, c.computed);
            } else {
                let _ = writeln!(
                    out,
                    "  {mark} {}: expected {}, computed {}{coset}",
                    c.name, c.expected, c.computed
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        for (file, digest) in &self.digests {
            let _ = writeln!(out, "  sha256 {digest}  {file}");
        }
        let passed = self.checks.iter().filter(|c| c.matches).count();
        let _ = writeln!(
            out,
            "  {passed}/{} checks, {} ms, modlie {}",
            self.checks.len(),
            self.elapsed_ms,
            self.version
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let mut r = Report::new("t");
        assert_eq!(r.derived_status(), Status::Fail);
        r.push(CheckRecord::new("a", "1", "1", true));
        assert_eq!(r.derived_status(), Status::Pass);
        r.conditional = true;
        assert_eq!(r.derived_status(), Status::ConditionalPass);
        r.push(CheckRecord::new("b", "1", "2", false));
        assert_eq!(r.derived_status(), Status::Fail);
    }

    #[test]
    fn json_roundtrip_keeps_text() {
        let mut r = Report::new("L3");
        r.push(CheckRecord::new("h1^[3]", "h1", "h1", true));
        r.digests.insert("a.json".into(), "00ff".into());
        let r = r.finish(Duration::from_millis(12));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.render_text(), r.render_text());
        assert!(r.to_json().contains("\"status\": \"pass\""));
    }
}
