//! Verdicts, run reports and their JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nilpotentizer::store::SCHEMA_VERSION;
use nilpotentizer::{Outcome, Status};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Report schema version; moves together with the profile cache schema.
pub const REPORT_VERSION: u32 = SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteVerdict {
    pub suite: String,
    pub group: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<String, Value>,
    pub ms: u64,
}

impl SuiteVerdict {
    pub fn new(suite: &str, group: &str, params: BTreeMap<String, Value>, outcome: Outcome, ms: u64) -> Self {
        Self {
            suite: suite.to_string(),
            group: group.to_string(),
            params,
            status: outcome.status,
            witness: outcome.witness,
            detail: outcome.detail,
            ms,
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Fail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub id: String,
    pub description: String,
    pub verdicts: Vec<SuiteVerdict>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub infeasible: usize,
}

impl Counts {
    fn add(&mut self, status: Status) {
        self.total += 1;
        match status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::NotApplicable => self.not_applicable += 1,
            Status::Infeasible => self.infeasible += 1,
        }
    }

    pub fn applicable(&self) -> usize {
        self.pass + self.fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub id: String,
    pub counts: Counts,
    pub applicable: usize,
    /// No instance satisfied the suite's hypotheses.
    pub weak: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub counts: Counts,
    pub suites: Vec<SuiteSummary>,
    pub weak_suites: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub tool_version: String,
    pub corpus_hash: String,
    pub seed: u64,
    pub deep: bool,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
    pub wall_ms: u64,
}

impl RunReport {
    pub fn new(corpus_hash: String, seed: u64, deep: bool, suites: Vec<SuiteReport>, wall_ms: u64) -> Self {
        let summary = summarize(&suites);
        Self {
            version: REPORT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            corpus_hash,
            seed,
            deep,
            suites,
            summary,
            wall_ms,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.counts.fail > 0
    }

    pub fn suite(&self, id: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.id == id)
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &SuiteVerdict> {
        self.suites.iter().flat_map(|s| s.verdicts.iter())
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "group", "params", "status", "witness", "detail", "ms"])?;
        for v in self.verdicts() {
            w.write_record([
                v.suite.as_str(),
                v.group.as_str(),
                &serde_json::to_string(&v.params)?,
                v.status.as_str(),
                &v.witness.as_ref().map(Value::to_string).unwrap_or_default(),
                &if v.detail.is_empty() { String::new() } else { serde_json::to_string(&v.detail)? },
                &v.ms.to_string(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// One line per suite, then every failure.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "corpus {}  seed {}  deep {}", &self.corpus_hash[..16.min(self.corpus_hash.len())], self.seed, self.deep);
        for s in &self.summary.suites {
            let c = &s.counts;
            let _ = writeln!(
                out,
                "{:<28} applicable {:>6}  pass {:>6}  fail {:>4}  n/a {:>6}  infeasible {:>3}{}",
                s.id,
                s.applicable,
                c.pass,
                c.fail,
                c.not_applicable,
                c.infeasible,
                if s.weak { "  WEAK" } else { "" }
            );
        }
        for v in self.verdicts().filter(|v| v.status == Status::Fail) {
            let _ = writeln!(
                out,
                "FAIL {} {} {} witness {}",
                v.suite,
                v.group,
                serde_json::to_string(&v.params).unwrap_or_default(),
                v.witness.as_ref().map(Value::to_string).unwrap_or_default()
            );
        }
        let c = &self.summary.counts;
        let _ = writeln!(
            out,
            "total {}  pass {}  fail {}  n/a {}  infeasible {}  ({} ms)",
            c.total, c.pass, c.fail, c.not_applicable, c.infeasible, self.wall_ms
        );
        out
    }
}

fn summarize(suites: &[SuiteReport]) -> Summary {
    let mut counts = Counts::default();
    let mut per_suite = Vec::new();
    for s in suites {
        let mut c = Counts::default();
        for v in &s.verdicts {
            c.add(v.status);
            counts.add(v.status);
        }
        let applicable = c.applicable();
        per_suite.push(SuiteSummary { id: s.id.clone(), counts: c, applicable, weak: applicable == 0 });
    }
    let weak_suites = per_suite.iter().filter(|s| s.weak).map(|s| s.id.clone()).collect();
    Summary { counts, suites: per_suite, weak_suites }
}

/// Removes the timing fields (`ms`, `wall_ms`) from a serialized report.
pub fn strip_timing(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("ms");
            map.remove("wall_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> RunReport {
        let v = |status: Outcome| SuiteVerdict::new("s", "G", BTreeMap::from([("x".into(), json!(1))]), status, 3);
        let suites = vec![
            SuiteReport { id: "a".into(), description: String::new(), verdicts: vec![v(Outcome::pass()), v(Outcome::fail(json!([1, 2])))] },
            SuiteReport { id: "b".into(), description: String::new(), verdicts: vec![v(Outcome::not_applicable("no"))] },
        ];
        RunReport::new("abc".into(), 7, false, suites, 12)
    }

    #[test]
    fn summary_counts_and_weak_flag() {
        let r = sample();
        assert!(r.has_failures());
        assert_eq!(r.summary.counts.total, 3);
        assert_eq!(r.summary.suites[0].applicable, 2);
        assert_eq!(r.summary.weak_suites, vec!["b".to_string()]);
        assert!(r.to_text().contains("WEAK"));
    }

    #[test]
    fn csv_has_one_row_per_verdict() {
        let text = sample().to_csv().unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().nth(2).unwrap().contains("fail"));
    }

    #[test]
    fn stripping_removes_all_timing() {
        let mut v = serde_json::to_value(sample()).unwrap();
        strip_timing(&mut v);
        let s = v.to_string();
        assert!(!s.contains("\"ms\"") && !s.contains("wall_ms"));
    }
}
