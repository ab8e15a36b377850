//! Check results and their CSV form.

use std::fmt;
use std::io::Write;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// `estimate <= bound + margin`
    AtMost,
    /// `estimate >= bound - margin`
    AtLeast,
    /// `|estimate - bound| <= margin`
    Equal,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
            Comparison::Equal => "==",
        })
    }
}

/// One empirical estimate set against its theoretical value.
///
/// The verdict allows `slack * std_error + tolerance` of deviation and is
/// always recomputable from the stored fields.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub check: String,
    /// Parameter cell, e.g. `p=1/2 D=1/4 L=4`.
    pub cell: String,
    pub estimate: f64,
    pub bound: f64,
    pub comparison: Comparison,
    pub samples: u64,
    pub std_error: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Diagnostic reports never fail a run.
    pub gating: bool,
    pub note: String,
}

impl LemmaReport {
    pub const SLACK: f64 = 3.0;
    pub const TOLERANCE: f64 = 1e-9;

    pub fn new(check: &str, cell: String, estimate: f64, bound: f64, comparison: Comparison, samples: u64, std_error: f64) -> Self {
        let mut r = Self {
            check: check.to_string(),
            cell,
            estimate,
            bound,
            comparison,
            samples: samples.max(1),
            std_error,
            slack: Self::SLACK,
            tolerance: Self::TOLERANCE,
            passed: false,
            gating: true,
            note: String::new(),
        };
        r.passed = r.verdict();
        r
    }

    pub fn with_slack(mut self, slack: f64, tolerance: f64) -> Self {
        self.slack = slack;
        self.tolerance = tolerance;
        self.passed = self.verdict();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn diagnostic(mut self) -> Self {
        self.gating = false;
        self
    }

    pub fn margin(&self) -> f64 {
        self.slack * self.std_error + self.tolerance
    }

    pub fn verdict(&self) -> bool {
        let m = self.margin();
        match self.comparison {
            Comparison::AtMost => self.estimate <= self.bound + m,
            Comparison::AtLeast => self.estimate >= self.bound - m,
            Comparison::Equal => (self.estimate - self.bound).abs() <= m,
        }
    }

    /// True when `passed` agrees with the stored numbers.
    pub fn is_consistent(&self) -> bool {
        self.passed == self.verdict()
    }

    /// Fails only for gating reports.
    pub fn blocks(&self) -> bool {
        self.gating && !self.passed
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "NOTE",
        };
        write!(
            f,
            "{status} {} [{}]: {:.6} {} {:.6} (n={}, se={:.3e})",
            self.check, self.cell, self.estimate, self.comparison, self.bound, self.samples, self.std_error
        )?;
        if !self.note.is_empty() {
            write!(f, " {}", self.note)?;
        }
        Ok(())
    }
}

pub const REPORT_COLUMNS: [&str; 12] = [
    "check",
    "cell",
    "estimate",
    "comparison",
    "bound",
    "samples",
    "std_error",
    "slack",
    "tolerance",
    "passed",
    "gating",
    "note",
];

fn csv_err(e: impl fmt::Display) -> Error {
    Error::Config(format!("csv output: {e}"))
}

pub fn write_reports<W: Write>(out: W, reports: &[LemmaReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REPORT_COLUMNS).map_err(csv_err)?;
    for r in reports {
        w.write_record([
            r.check.clone(),
            r.cell.clone(),
            r.estimate.to_string(),
            r.comparison.to_string(),
            r.bound.to_string(),
            r.samples.to_string(),
            r.std_error.to_string(),
            r.slack.to_string(),
            r.tolerance.to_string(),
            r.passed.to_string(),
            r.gating.to_string(),
            r.note.clone(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let r = LemmaReport::new("x", String::new(), 1.05, 1.0, Comparison::Equal, 100, 0.02);
        assert!(r.passed && r.is_consistent());
        let r = LemmaReport::new("x", String::new(), 1.07, 1.0, Comparison::Equal, 100, 0.02);
        assert!(!r.passed);
        let r = LemmaReport::new("x", String::new(), 0.0, 0.5, Comparison::AtMost, 1, 0.0);
        assert!(r.passed);
        let r = LemmaReport::new("x", String::new(), 0.4, 0.5, Comparison::AtLeast, 1, 0.0);
        assert!(!r.passed && r.blocks());
        assert!(!r.clone().diagnostic().blocks());
        let mut tampered = r;
        tampered.passed = true;
        assert!(!tampered.is_consistent());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = LemmaReport::new("coverage", "L=4".into(), 0.9, 0.8, Comparison::AtLeast, 10, 0.01).with_note("a, b");
        let mut buf = Vec::new();
        write_reports(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), REPORT_COLUMNS.join(","));
        assert!(lines.next().unwrap().starts_with("coverage,L=4,0.9,>=,0.8,10,"));
    }
}
