//! Verification records and their JSON-lines / CSV encodings.

use serde::{Deserialize, Serialize};
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Mc,
}

/// One checked claim.
///
/// `value` and `bound` are strings so that exact rationals (`1/3`) and floats
/// share one column; Monte Carlo records also carry a confidence interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub mode: Mode,
    pub params: String,
    pub value: String,
    pub bound: String,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn exact(claim: &str, params: impl Into<String>, value: impl Into<String>, bound: impl Into<String>, pass: bool) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            mode: Mode::Exact,
            params: params.into(),
            value: value.into(),
            bound: bound.into(),
            ci_low: None,
            ci_high: None,
            pass,
            notes: Vec::new(),
        }
    }

    pub fn mc(
        claim: &str,
        params: impl Into<String>,
        estimate: f64,
        bound: impl Into<String>,
        ci: (f64, f64),
        pass: bool,
    ) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            mode: Mode::Mc,
            params: params.into(),
            value: format!("{estimate:.6}"),
            bound: bound.into(),
            ci_low: Some(ci.0),
            ci_high: Some(ci.1),
            pass,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {:<22} {:<5} {} value={} bound={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.claim,
            match self.mode {
                Mode::Exact => "exact",
                Mode::Mc => "mc",
            },
            self.params,
            self.value,
            self.bound
        )
    }
}

/// Stable order: claim id, then parameters.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| a.claim.cmp(&b.claim).then_with(|| a.params.cmp(&b.params)));
}

pub fn write_jsonl<W: Write>(mut out: W, reports: &[VerificationReport]) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    claim: &'a str,
    mode: &'a str,
    params: &'a str,
    value: &'a str,
    bound: &'a str,
    ci_low: String,
    ci_high: String,
    pass: bool,
}

pub fn write_csv<W: Write>(out: W, reports: &[VerificationReport]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow {
            claim: &r.claim,
            mode: match r.mode {
                Mode::Exact => "exact",
                Mode::Mc => "mc",
            },
            params: &r.params,
            value: &r.value,
            bound: &r.bound,
            ci_low: r.ci_low.map(|v| format!("{v:.6}")).unwrap_or_default(),
            ci_high: r.ci_high.map(|v| format!("{v:.6}")).unwrap_or_default(),
            pass: r.pass,
        })
        .map_err(io::Error::other)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_has_the_interface_fields() {
        let r = VerificationReport::exact("lem-2-ac.ii", "p=2,q=3", "1/3", "1/3", true);
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &[r]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        for key in ["claim", "mode", "params", "value", "bound", "ci_low", "ci_high", "pass"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["mode"], "exact");
    }

    #[test]
    fn csv_header_and_row() {
        let r = VerificationReport::mc("thm-p-2.3", "j=1", 0.25, "<= 0.5", (0.2, 0.3), true);
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "claim,mode,params,value,bound,ci_low,ci_high,pass"
        );
        assert!(lines.next().unwrap().starts_with("thm-p-2.3,mc,j=1,0.250000"));
    }
}
