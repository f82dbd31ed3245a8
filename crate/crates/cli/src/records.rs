//! The structured record stream written by campaigns: one JSON object per
//! line, one line per instance, independently parseable. The stream is the
//! source of truth; the human-readable summary mirrors it.

use serde::{Deserialize, Serialize};
use serde_json::json;

use spg_core::search::{CampaignReport, InstanceVerdict};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub instance_index: u64,
    pub check: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub timings: Timings,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Timings {
    pub micros: u64,
}

/// File name of the witness artifact for a counterexample at `index`.
pub fn counterexample_file_name(index: u64) -> String {
    format!("counterexample_{index:06}.json")
}

/// Flattens a campaign report into its record stream.
pub fn build_records(report: &CampaignReport) -> Vec<RunRecord> {
    let with_file: std::collections::BTreeMap<u64, bool> = report
        .counterexamples
        .iter()
        .map(|c| (c.index, c.confirmed))
        .collect();
    report
        .records
        .iter()
        .map(|r| {
            let witness = match (&r.verdict, with_file.get(&r.index)) {
                (InstanceVerdict::OracleDisagreement { detail }, confirmed) => Some(json!({
                    "detail": detail,
                    "file": counterexample_file_name(r.index),
                    "confirmed": confirmed.copied().unwrap_or(false),
                })),
                (_, Some(confirmed)) => Some(json!({
                    "file": counterexample_file_name(r.index),
                    "confirmed": confirmed,
                })),
                (InstanceVerdict::PropertyNotApplicable { reason }, None) => {
                    Some(json!({ "detail": reason }))
                }
                (InstanceVerdict::Skipped { error }, None) => Some(json!({ "error": error })),
                _ => None,
            };
            RunRecord {
                seed: r.seed,
                instance_index: r.index,
                check: report.check.name().to_string(),
                verdict: r.verdict.label().to_string(),
                witness,
                timings: Timings { micros: r.micros },
            }
        })
        .collect()
}

/// Serializes the stream, one record per line.
pub fn to_lines(records: &[RunRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}
