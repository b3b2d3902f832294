//! Sweep records, the summary, and their on-disk form.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Check, SweepConfig};
use crate::HarnessError;

pub const SCHEMA: &str = "homcert/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Skipped,
}

/// One evaluated `(G, H, check)` item.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check: Check,
    /// graph6 of `G`.
    pub graph: String,
    pub n: usize,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    pub status: Status,
    /// Guard or violation description.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// `less`, `equal` or `greater`: the tested side against its bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<&'static str>,
    pub equality: bool,
    pub details: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub records: usize,
    pub ok: usize,
    pub violations: usize,
    pub skipped: usize,
    pub equalities: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCase {
    pub check: Check,
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub schema: &'static str,
    pub version: &'static str,
    pub seed: u64,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical runs.
    pub timestamp: u64,
    pub config: SweepConfig,
    pub pairs: Vec<(usize, usize)>,
    pub graphs: usize,
    pub constraint_graphs: Vec<String>,
    pub checks: BTreeMap<&'static str, Tally>,
    pub violations: usize,
    pub skipped: usize,
    pub equality_cases: Vec<EqualityCase>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl SweepReport {
    pub fn has_violations(&self) -> bool {
        self.summary.violations > 0
    }

    pub fn violations(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Violation)
    }

    pub fn records_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes") + "\n"
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("check,records,ok,violations,skipped,equalities\n");
        for (name, t) in &self.summary.checks {
            let _ = writeln!(out, "{name},{},{},{},{},{}", t.records, t.ok, t.violations, t.skipped, t.equalities);
        }
        out
    }

    /// Writes `records.jsonl`, `summary.json` and `summary.csv` into `dir`.
    pub fn persist(&self, dir: &Path) -> Result<(), HarnessError> {
        let io = |e: std::io::Error| HarnessError::Io(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(dir.join("records.jsonl"), self.records_jsonl()).map_err(io)?;
        fs::write(dir.join("summary.json"), self.summary_json()).map_err(io)?;
        fs::write(dir.join("summary.csv"), self.summary_csv()).map_err(io)?;
        Ok(())
    }
}

pub(crate) fn tally(records: &[Record], checks: &[Check]) -> (BTreeMap<&'static str, Tally>, Vec<EqualityCase>) {
    let mut out: BTreeMap<&'static str, Tally> = checks.iter().map(|c| (c.name(), Tally::default())).collect();
    let mut cases = Vec::new();
    for r in records {
        let t = out.entry(r.check.name()).or_default();
        t.records += 1;
        match r.status {
            Status::Ok => t.ok += 1,
            Status::Violation => t.violations += 1,
            Status::Skipped => t.skipped += 1,
        }
        if r.equality {
            t.equalities += 1;
            cases.push(EqualityCase {
                check: r.check,
                graph: r.graph.clone(),
                h: r.h.clone(),
            });
        }
    }
    (out, cases)
}
