//! Command output in JSON, CSV and aligned text.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, headers: &[&str]) -> Self {
        Self {
            title: title.to_string(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Everything a command produces. The first table is the CSV payload.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub body: Map<String, Value>,
    pub tables: Vec<Table>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(command: &str, params: Value) -> Self {
        let mut body = Map::new();
        body.insert("params".into(), params);
        Self {
            command: command.to_string(),
            body,
            tables: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable output");
        self.body.insert(key.to_string(), v);
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
                doc.insert("command".into(), json!(self.command));
                doc.extend(self.body.clone());
                doc.insert("checks".into(), serde_json::to_value(&self.checks)?);
                doc.insert("passed".into(), json!(self.passed()));
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                if let Some(t) = self.tables.first() {
                    w.write_record(&t.headers)?;
                    for row in &t.rows {
                        w.write_record(row)?;
                    }
                }
                w.flush()
            }
            Format::Text => {
                for t in &self.tables {
                    write_aligned(t, out)?;
                    writeln!(out)?;
                }
                for c in &self.checks {
                    let status = if c.passed { "ok" } else { "FAILED" };
                    if c.detail.is_empty() {
                        writeln!(out, "check {}: {status}", c.name)?;
                    } else {
                        writeln!(out, "check {}: {status} ({})", c.name, c.detail)?;
                    }
                }
                Ok(())
            }
        }
    }
}

fn write_aligned(t: &Table, out: &mut dyn Write) -> std::io::Result<()> {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    if !t.title.is_empty() {
        writeln!(out, "# {}", t.title)?;
    }
    writeln!(out, "{}", line(&t.headers))?;
    for row in &t.rows {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}
