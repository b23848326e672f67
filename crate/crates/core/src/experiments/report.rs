use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub type Record = Map<String, Value>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one scripted experiment.
///
/// `verdict` and `failures` are derived from `records` and `summary` only,
/// so a report read back from disk can be re-judged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: Value,
    pub records: Vec<Record>,
    pub summary: Record,
    pub verdict: Verdict,
    pub failures: Vec<String>,
    #[serde(default)]
    pub artifacts: Vec<String>,
}

impl ExperimentReport {
    pub fn new(name: &str, parameters: Value, records: Vec<Record>, summary: Record, failures: Vec<String>) -> Self {
        let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
        ExperimentReport { name: name.to_string(), parameters, records, summary, verdict, failures, artifacts: vec![] }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports hold plain JSON values")
    }

    /// One row per record; columns in first-seen order across all records.
    pub fn to_csv(&self) -> String {
        let mut columns: Vec<&str> = vec![];
        for r in &self.records {
            for k in r.keys() {
                if !columns.contains(&k.as_str()) {
                    columns.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(&columns).expect("in-memory writer");
        for r in &self.records {
            let row: Vec<String> = columns.iter().map(|c| r.get(*c).map(cell).unwrap_or_default()).collect();
            w.write_record(&row).expect("in-memory writer");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is UTF-8")
    }

    /// Writes `<name>.json` and `<name>.csv` into `dir` and lists them in
    /// `artifacts`.
    pub fn write_to(&mut self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let json = dir.join(format!("{}.json", self.name));
        let csv = dir.join(format!("{}.csv", self.name));
        self.artifacts = vec![json.display().to_string(), csv.display().to_string()];
        fs::write(&csv, self.to_csv())?;
        fs::write(&json, self.to_json())?;
        Ok(vec![json, csv])
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Builds a record from `key => value` pairs.
#[macro_export]
macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = $crate::experiments::Record::new();
        $( r.insert($k.to_string(), serde_json::json!($v)); )*
        r
    }};
}
