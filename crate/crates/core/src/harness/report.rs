//! Study reports: verdicts, echoed tolerances, scalar metrics and CSV time
//! series. Serialization is deterministic (ordered maps, no wall-clock data).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::OutputFormat;
use crate::error::{Error, Result};

/// Comparison a verdict applies between its value and threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn holds(self, value: f64, threshold: f64) -> bool {
        if !value.is_finite() {
            return false;
        }
        match self {
            Relation::Lt => value < threshold,
            Relation::Le => value <= threshold,
            Relation::Gt => value > threshold,
            Relation::Ge => value >= threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub value: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub pass: bool,
    /// Counted verdicts decide the exit status; the rest are informational.
    pub counted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, threshold: f64) -> Self {
        Verdict {
            name: name.into(),
            value,
            relation,
            threshold,
            pass: relation.holds(value, threshold),
            counted: true,
            note: None,
        }
    }

    pub fn informational(mut self) -> Self {
        self.counted = false;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Forces a pass regardless of the comparison, with the reason recorded.
    pub fn trivially_passed(mut self, note: impl Into<String>) -> Self {
        self.pass = true;
        self.note = Some(note.into());
        self
    }

    /// One-line human summary.
    pub fn line(&self) -> String {
        let status = match (self.pass, self.counted) {
            (true, true) => "PASS",
            (false, true) => "FAIL",
            (true, false) => "info",
            (false, false) => "info (not met)",
        };
        format!(
            "{status:>14}  {}: {:.6e} {} {:.6e}{}",
            self.name,
            self.value,
            self.relation.symbol(),
            self.threshold,
            self.note.as_ref().map(|n| format!("  [{n}]")).unwrap_or_default()
        )
    }
}

/// A table written as CSV.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Shortest round-trip decimal form; `NaN`/`inf` spelled out.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:?}")
    }
}

impl Series {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Series {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_f64(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&x| fmt_f64(x)).collect());
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub study: String,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
    pub tolerances: BTreeMap<String, f64>,
    pub metrics: BTreeMap<String, Value>,
    #[serde(skip)]
    pub series: Vec<Series>,
}

impl Report {
    pub fn new(study: impl Into<String>) -> Self {
        Report {
            study: study.into(),
            passed: true,
            verdicts: Vec::new(),
            tolerances: BTreeMap::new(),
            metrics: BTreeMap::new(),
            series: Vec::new(),
        }
    }

    /// Adds a verdict and echoes its threshold under the verdict's name.
    pub fn verdict(&mut self, v: Verdict) {
        self.tolerances.insert(v.name.clone(), v.threshold);
        if v.counted && !v.pass {
            self.passed = false;
        }
        self.verdicts.push(v);
    }

    pub fn tolerance(&mut self, name: &str, value: f64) {
        self.tolerances.insert(name.to_string(), value);
    }

    pub fn metric(&mut self, name: &str, value: impl Serialize) {
        self.metrics.insert(
            name.to_string(),
            serde_json::to_value(value).expect("metric serializes"),
        );
    }

    pub fn verdict_named(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text verdict table.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} study: {}",
            self.study,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for v in &self.verdicts {
            let _ = writeln!(out, "{}", v.line());
        }
        out
    }

    /// Writes `<study>_summary.json` and `<study>_<series>.csv` into `dir`
    /// and returns the paths written.
    pub fn write(&self, dir: &Path, formats: &[OutputFormat]) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut written = Vec::new();
        if formats.contains(&OutputFormat::Json) {
            let path = dir.join(format!("{}_summary.json", self.study));
            std::fs::write(&path, self.summary_json()).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
        if formats.contains(&OutputFormat::Csv) {
            for s in &self.series {
                let path = dir.join(format!("{}_{}.csv", self.study, s.name));
                std::fs::write(&path, s.to_csv()).map_err(|e| Error::io(&path, e))?;
                written.push(path);
            }
        }
        Ok(written)
    }
}
