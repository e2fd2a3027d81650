//! Report assembly: ordered sections of named, enclosed values with a
//! provenance string each, a global verdict, deterministic JSON output and
//! a plain-text rendering.

use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EntryStatus {
    Pass,
    Fail,
    Incomplete,
    Heuristic,
    Cited,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub status: EntryStatus,
    /// Decimal-string enclosure endpoints; equal strings denote a point or
    /// an exact value.
    pub lo: String,
    pub hi: String,
    /// Where the number comes from inside this artifact (ledger id, data
    /// file, cited-constants entry, computation).
    pub locus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub entries: Vec<Entry>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub culprit: Option<String>,
}

impl Report {
    pub fn new(title: &str) -> Report {
        Report { title: title.to_string(), entries: Vec::new(), verdict: Verdict::Pass, culprit: None }
    }

    pub fn push(&mut self, e: Entry) {
        match e.status {
            EntryStatus::Fail => {
                self.verdict = Verdict::Fail;
                if self.culprit.is_none() {
                    self.culprit = Some(e.name.clone());
                }
            }
            EntryStatus::Incomplete => {
                if self.verdict == Verdict::Pass {
                    self.verdict = Verdict::Incomplete;
                }
            }
            _ => {}
        }
        self.entries.push(e);
    }

    /// Every entry must carry an enclosure and a locus; reports with bare
    /// numbers are programming errors.
    pub fn lint(&self) -> Result<(), String> {
        for e in &self.entries {
            if e.lo.is_empty() || e.hi.is_empty() {
                return Err(format!("entry {} has no enclosure", e.name));
            }
            if e.locus.is_empty() {
                return Err(format!("entry {} has no locus", e.name));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        self.lint().expect("report passes lint");
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "== {} ==", self.title);
        for e in &self.entries {
            let value = if e.lo == e.hi {
                e.lo.clone()
            } else {
                format!("[{}, {}]", e.lo, e.hi)
            };
            let _ = writeln!(s, "{:-44} {:10?} {}  ({})", e.name, e.status, value, e.locus);
            if let Some(d) = &e.detail {
                let _ = writeln!(s, "{:44} {}", "", d);
            }
        }
        let _ = match &self.culprit {
            Some(c) => writeln!(s, "verdict: {:?} (culprit: {})", self.verdict, c),
            None => writeln!(s, "verdict: {:?}", self.verdict),
        };
        s
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Incomplete => 2,
        }
    }
}

pub fn entry(name: &str, status: EntryStatus, lo: &str, hi: &str, locus: &str) -> Entry {
    Entry {
        name: name.to_string(),
        status,
        lo: lo.to_string(),
        hi: hi.to_string(),
        locus: locus.to_string(),
        detail: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_tracks_entries_and_first_culprit() {
        let mut r = Report::new("demo");
        r.push(entry("a", EntryStatus::Pass, "1", "1", "x"));
        assert_eq!(r.verdict, Verdict::Pass);
        r.push(entry("b", EntryStatus::Incomplete, "1", "2", "x"));
        assert_eq!(r.verdict, Verdict::Incomplete);
        r.push(entry("c", EntryStatus::Fail, "3", "3", "x"));
        r.push(entry("d", EntryStatus::Fail, "3", "3", "x"));
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.culprit.as_deref(), Some("c"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn lint_rejects_bare_numbers() {
        let mut r = Report::new("demo");
        r.push(entry("a", EntryStatus::Pass, "1", "1", ""));
        assert!(r.lint().is_err());
    }

    #[test]
    fn json_is_deterministic() {
        let mut r = Report::new("demo");
        r.push(entry("a", EntryStatus::Pass, "1.5", "1.5", "cited:x"));
        assert_eq!(r.to_json(), r.to_json());
        assert!(r.to_json().contains("\"verdict\": \"PASS\""));
    }
}
