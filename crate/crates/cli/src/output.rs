//! Report assembly and rendering. Machine output is one JSON document with a
//! schema version; it carries no timings so equal seeds give equal bytes.

use std::fmt::Write as _;
use std::time::Duration;

use clap::ValueEnum;
use hochkit_core::report::CheckRecord;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Machine,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub max_degree: Option<usize>,
    pub size_guard: usize,
    pub field_order: Option<u32>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: String,
    pub name: String,
    pub tag: String,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Record {
    pub fn from_check(suite: &str, r: CheckRecord) -> Self {
        Record {
            suite: suite.to_string(),
            name: r.name,
            tag: r.tag,
            inputs: r.inputs,
            lhs: r.lhs,
            rhs: r.rhs,
            pass: r.pass,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub data: Value,
    pub tables: Vec<Table>,
    pub records: Vec<Record>,
    pub summary: Summary,
    #[serde(skip)]
    pub elapsed: Duration,
    /// Per-suite wall time, shown in table output only.
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            config,
            data: Value::Object(Default::default()),
            tables: Vec::new(),
            records: Vec::new(),
            summary: Summary { total: 0, passed: 0, failed: 0 },
            elapsed: Duration::ZERO,
            timings: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable");
        if let Value::Object(m) = &mut self.data {
            m.insert(key.to_string(), v);
        }
    }

    pub fn extend(&mut self, suite: &str, records: Vec<CheckRecord>) {
        self.records.extend(records.into_iter().map(|r| Record::from_check(suite, r)));
    }

    pub fn finish(&mut self, elapsed: Duration) {
        let passed = self.records.iter().filter(|r| r.pass).count();
        self.summary = Summary { total: self.records.len(), passed, failed: self.records.len() - passed };
        self.elapsed = elapsed;
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "hochkit {}  (seed {})", self.command, self.config.seed);
        if let Value::Object(m) = &self.data {
            for (k, v) in m {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "  {k}: {shown}");
            }
        }
        for t in &self.tables {
            out.push('\n');
            let _ = writeln!(out, "{}", t.title);
            out.push_str(&grid(&t.header, &t.rows));
        }
        if !self.records.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .records
                .iter()
                .map(|r| {
                    vec![
                        if r.pass { "PASS" } else { "FAIL" }.to_string(),
                        r.tag.clone(),
                        r.name.clone(),
                        r.inputs.clone(),
                        r.lhs.clone(),
                        r.rhs.clone(),
                    ]
                })
                .collect();
            let header = ["", "tag", "identity", "inputs", "lhs", "rhs"].map(String::from).to_vec();
            out.push_str(&grid(&header, &rows));
        }
        out.push('\n');
        for (suite, d) in &self.timings {
            let _ = writeln!(out, "  {suite}: {:.3}s", d.as_secs_f64());
        }
        let _ = writeln!(
            out,
            "summary: {} checks, {} passed, {} failed  ({:.3}s)",
            self.summary.total,
            self.summary.passed,
            self.summary.failed,
            self.elapsed.as_secs_f64()
        );
        out
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut w: Vec<usize> = header.iter().map(|h| width(h)).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate().take(cols) {
            w[i] = w[i].max(width(c));
        }
    }
    let line = |cells: &[String]| -> String {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c}{}", " ".repeat(w[i].saturating_sub(width(c)))))
            .collect();
        format!("  {}\n", parts.join("  ").trim_end())
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}
