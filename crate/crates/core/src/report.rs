//! Law reports and their line-oriented rendering.
//!
//! Every checker in the crate produces a [`LawReport`]. A report renders one
//! record per line:
//!
//! ```text
//! PASS law=<name> case=<id> witness=<serialized>
//! ```
//!
//! Witness text is sanitized so a record always stays on one line.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawRecord {
    pub law: String,
    pub case: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawReport {
    pub records: Vec<LawRecord>,
}

impl LawReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, law: impl Into<String>, case: impl Into<String>) {
        self.records.push(LawRecord {
            law: law.into(),
            case: case.into(),
            passed: true,
            witness: "-".into(),
        });
    }

    pub fn fail(&mut self, law: impl Into<String>, case: impl Into<String>, witness: impl Into<String>) {
        self.records.push(LawRecord {
            law: law.into(),
            case: case.into(),
            passed: false,
            witness: witness.into(),
        });
    }

    /// Records a pass when `ok`, otherwise a failure with the lazily built witness.
    pub fn check(
        &mut self,
        law: &str,
        case: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> String,
    ) {
        if ok {
            self.pass(law, case);
        } else {
            self.fail(law, case, witness());
        }
    }

    pub fn extend(&mut self, other: LawReport) {
        self.records.extend(other.records);
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of records for a given law name.
    pub fn count_law(&self, law: &str) -> usize {
        self.records.iter().filter(|r| r.law == law).count()
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl fmt::Display for LawRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} law={} case={} witness={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.law,
            one_line(&self.case).replace(' ', "_"),
            one_line(&self.witness)
        )
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_render_on_one_line() {
        let mut r = LawReport::new();
        r.pass("eq1", "sig a");
        r.fail("eq2", "x", "(model\n  m)");
        let text = r.to_string();
        assert_eq!(
            text,
            "PASS law=eq1 case=sig_a witness=-\nFAIL law=eq2 case=x witness=(model m)\n"
        );
        assert_eq!(r.failure_count(), 1);
        assert!(!r.all_passed());
    }
}
