//! Versioned experiment reports, JSON and CSV.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{ExperimentConfig, ExponentFit, Row, Verdict};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub config: ExperimentConfig,
    pub rows: Vec<Row>,
    pub fit: Option<ExponentFit>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// The rows only; the fit and config are not part of the CSV.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,seed_rep,rounds,total_bits,verdict\n");
        for r in &self.rows {
            let verdict = serde_json::to_value(r.verdict).unwrap();
            writeln!(s, "{},{},{},{},{}", r.n, r.seed_rep, r.rounds, r.total_bits, verdict.as_str().unwrap()).unwrap();
        }
        s
    }

    /// 1 if any row failed its oracle or round check, 3 if any row hit an
    /// engine error, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(|r| matches!(r.verdict, Verdict::Mismatch | Verdict::BoundViolation)) {
            1
        } else if self.rows.iter().any(|r| r.verdict == Verdict::Error) {
            3
        } else {
            0
        }
    }
}

/// Checks a JSON report's version and field set. Errors name what is
/// missing or wrong.
pub fn validate_report(text: &str) -> Result<Report, Vec<String>> {
    let v: Value = serde_json::from_str(text).map_err(|e| vec![format!("not valid JSON: {e}")])?;
    let mut errs = Vec::new();
    let Some(obj) = v.as_object() else {
        return Err(vec!["report is not a JSON object".into()]);
    };
    for f in ["version", "config", "rows", "fit"] {
        if !obj.contains_key(f) {
            errs.push(format!("missing field `{f}`"));
        }
    }
    match obj.get("version").map(|v| v.as_u64()) {
        Some(Some(v)) if v == REPORT_VERSION as u64 => {}
        Some(_) => errs.push(format!("unsupported version {}, expected {REPORT_VERSION}", obj["version"])),
        None => {}
    }
    if let Some(rows) = obj.get("rows") {
        match rows.as_array() {
            None => errs.push("`rows` is not an array".into()),
            Some(rows) => {
                for (i, r) in rows.iter().enumerate() {
                    for f in ["n", "seed_rep", "rounds", "total_bits", "verdict"] {
                        if r.get(f).is_none() {
                            errs.push(format!("rows[{i}]: missing field `{f}`"));
                        }
                    }
                }
            }
        }
    }
    if let Some(fit) = obj.get("fit").filter(|f| !f.is_null()) {
        for f in ["slope", "residual"] {
            if fit.get(f).is_none() {
                errs.push(format!("fit: missing field `{f}`"));
            }
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    serde_json::from_value(v).map_err(|e| vec![format!("malformed report: {e}")])
}
