//! Report rendering: line-delimited JSON records and human-readable tables.
//!
//! Every structured record carries `schema_version`. The only time-dependent
//! field in a whole run lives in the leading `header` record, so the rest of
//! the stream is byte-identical across runs.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::harness::miner::{MinerReport, Outcome};
use crate::harness::PropertyReport;
use crate::ideal::Subset;
use crate::inverse::{DrazinResult, InverseResult};
use crate::ring::RingHandle;

pub const SCHEMA_VERSION: u32 = 1;

/// Output mode shared by the CLI and the config file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Human,
    Structured,
}

/// One structured record: `{"record": kind, "schema_version": 1, ...body}`.
pub fn record<T: Serialize>(kind: &str, body: &T) -> String {
    let mut map = Map::new();
    map.insert("record".into(), Value::from(kind));
    map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    match serde_json::to_value(body).expect("records serialize") {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("value".into(), other);
        }
    }
    Value::Object(map).to_string()
}

pub fn header(command: &str) -> String {
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    record(
        "header",
        &json!({
            "tool": "bcinv",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "timestamp": timestamp,
        }),
    )
}

/// Aggregate verdict over a verify run.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub ring: String,
    pub status: &'static str,
    pub theorems: usize,
    pub failed: Vec<&'static str>,
    /// Set when something failed: the sweep covers one finite ring, so a
    /// failure may reflect finiteness rather than a general statement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

pub const FINITENESS_NOTE: &str =
    "failures were observed in a finite ring; check whether the hypothesis relies on infinite structure";

impl Summary {
    pub fn of(ring: &RingHandle, reports: &[PropertyReport]) -> Summary {
        let failed: Vec<&'static str> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.theorem)
            .collect();
        Summary {
            ring: ring.spec().to_string(),
            status: if failed.is_empty() { "pass" } else { "fail" },
            theorems: reports.len(),
            note: (!failed.is_empty()).then_some(FINITENESS_NOTE),
            failed,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

/// The ideal family of one element.
#[derive(Debug, Clone, Serialize)]
pub struct IdealsReport {
    pub ring: String,
    pub a: u32,
    pub literal: String,
    #[serde(rename = "aR")]
    pub right: Subset,
    #[serde(rename = "Ra")]
    pub left: Subset,
    #[serde(rename = "l(a)")]
    pub lann: Subset,
    #[serde(rename = "r(a)")]
    pub rann: Subset,
    #[serde(rename = "rl(a)")]
    pub rl: Subset,
    #[serde(rename = "lr(a)")]
    pub lr: Subset,
}

fn list(set: &Subset) -> String {
    let items: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn human_ideals(report: &IdealsReport) -> String {
    let mut out = format!(
        "ring {}  a = {} (index {})\n",
        report.ring, report.literal, report.a
    );
    for (name, set) in [
        ("aR", &report.right),
        ("Ra", &report.left),
        ("l(a)", &report.lann),
        ("r(a)", &report.rann),
        ("rl(a)", &report.rl),
        ("lr(a)", &report.lr),
    ] {
        let _ = writeln!(out, "  {name:<6} |{:>4}| {}", set.len(), list(set));
    }
    out
}

pub fn human_inverse(ring: &RingHandle, result: &InverseResult) -> String {
    let inputs: Vec<String> = result
        .inputs
        .iter()
        .map(|(n, e)| format!("{n}={}", ring.format_ix(e.index())))
        .collect();
    let mut out = format!(
        "{} of {} in {}\n",
        result.kind,
        inputs.join(" "),
        ring.spec()
    );
    match result.value {
        Some(y) => {
            let _ = writeln!(
                out,
                "  found y = {} (index {})",
                ring.format_ix(y.index()),
                y.index()
            );
        }
        None => out.push_str("  not found\n"),
    }
    for (name, w) in &result.witnesses {
        let _ = writeln!(out, "  witness {name} = {}", ring.format_ix(w.index()));
    }
    out
}

pub fn human_drazin(ring: &RingHandle, a: u32, result: Option<&DrazinResult>) -> String {
    match result {
        Some(d) => format!(
            "Drazin inverse of a={} in {}\n  found y = {} (index {}), j = {}\n",
            ring.format_ix(a),
            ring.spec(),
            ring.format_ix(d.value.index()),
            d.value.index(),
            d.index
        ),
        None => format!(
            "Drazin inverse of a={} in {}\n  not found\n",
            ring.format_ix(a),
            ring.spec()
        ),
    }
}

pub fn human_reports(reports: &[PropertyReport], summary: &Summary) -> String {
    let mut out = format!("ring {}\n", summary.ring);
    let _ = writeln!(
        out,
        "{:<28} {:>6} {:>12} {:>9} {:>12} {:>9} {:>9}",
        "theorem", "status", "instances", "failures", "vacuous", "complete", "seconds"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<28} {:>6} {:>12} {:>9} {:>12} {:>9} {:>9.3}",
            r.theorem,
            if r.passed() { "pass" } else { "FAIL" },
            r.instances,
            r.failures,
            r.vacuous,
            if r.complete { "yes" } else { "capped" },
            r.wall_time.as_secs_f64()
        );
        if let Some(cx) = &r.counterexample {
            let inputs: Vec<String> = cx.inputs.iter().map(|(n, v)| format!("{n}={v}")).collect();
            let _ = writeln!(
                out,
                "    counterexample {}: {}",
                inputs.join(" "),
                cx.clause
            );
        }
    }
    let _ = writeln!(
        out,
        "{} of {} theorems pass",
        summary.theorems - summary.failed.len(),
        summary.theorems
    );
    if let Some(note) = summary.note {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

pub fn human_miner(report: &MinerReport) -> String {
    let mut out = format!(
        "target {}: {}\nfamily {} up to n = {}, {} triples over {} ring(s)\n",
        report.target,
        report.target.description(),
        report.family.id(),
        report.max_n,
        report.triples,
        report.rings.len()
    );
    match report.outcome {
        Outcome::Found => {
            for w in &report.witnesses {
                let _ = writeln!(
                    out,
                    "  {}  a={} b={} c={}  t={}",
                    w.ring, w.a, w.b, w.c, w.t
                );
            }
        }
        Outcome::NoneFound => out.push_str("  none found (inconclusive beyond the swept rings)\n"),
        Outcome::BudgetExhausted => {
            out.push_str("  none found before the budget ran out\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_lead_with_kind_and_schema() {
        let line = record("summary", &json!({"status": "pass"}));
        assert_eq!(
            line,
            r#"{"record":"summary","schema_version":1,"status":"pass"}"#
        );
    }

    #[test]
    fn header_is_a_single_line() {
        let h = header("verify");
        assert!(!h.contains('\n'));
        let v: Value = serde_json::from_str(&h).unwrap();
        assert_eq!(v["record"], "header");
        assert!(v["timestamp"].as_u64().is_some());
    }
}
