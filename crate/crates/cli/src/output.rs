//! Tables, number formatting and artifact writing.

use crate::config::Format;
use crate::error::CliError;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

/// Shortest representation that reads back to the same `f64` (at most 17
/// significant digits).
pub fn num(v: f64) -> String {
    format!("{v:?}")
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).map_err(CliError::io)?;
        for r in &self.rows {
            w.write_record(r).map_err(CliError::io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::io(e.into_error()))?;
        String::from_utf8(bytes).map_err(CliError::io)
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header = r
            .headers()
            .map_err(CliError::validation)?
            .iter()
            .map(String::from)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(
                rec.map_err(CliError::validation)?
                    .iter()
                    .map(String::from)
                    .collect(),
            );
        }
        Ok(Table { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Rows as JSON objects; numeric cells become numbers, empty cells `null`.
    pub fn to_json_rows(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (h, c) in self.header.iter().zip(r) {
                    m.insert(h.clone(), cell_value(c));
                }
                Value::Object(m)
            })
            .collect();
        Value::Array(rows)
    }
}

fn cell_value(c: &str) -> Value {
    if c.is_empty() {
        return Value::Null;
    }
    if let Ok(i) = c.parse::<i64>() {
        return json!(i);
    }
    if let Ok(v) = c.parse::<f64>() {
        if v.is_finite() {
            return json!(v);
        }
    }
    match c {
        "true" => json!(true),
        "false" => json!(false),
        _ => json!(c),
    }
}

/// Everything one subcommand produces.
#[derive(Debug, Clone)]
pub struct Artifacts {
    /// Base name of the CSV file under `--out-dir`.
    pub table_name: &'static str,
    pub table: Table,
    /// Base name of the JSON file under `--out-dir`.
    pub meta_name: &'static str,
    pub meta: Map<String, Value>,
    /// Human summary printed when artifacts go to a directory.
    pub summary: String,
}

impl Artifacts {
    pub fn new(table_name: &'static str, table: Table) -> Self {
        Artifacts {
            table_name,
            table,
            meta_name: table_name,
            meta: Map::new(),
            summary: String::new(),
        }
    }

    pub fn with_meta(mut self, meta_name: &'static str, meta: Map<String, Value>) -> Self {
        self.meta_name = meta_name;
        self.meta = meta;
        self
    }

    fn meta_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        for (k, v) in &self.meta {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    fn full_json(&self) -> Value {
        let mut v = self.meta_json();
        if let Value::Object(m) = &mut v {
            m.insert("columns".into(), json!(self.table.header));
            m.insert("rows".into(), self.table.to_json_rows());
        }
        v
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => Ok(pretty(&self.full_json())),
        }
    }

    pub fn write_dir(&self, dir: &Path) -> Result<Vec<String>, CliError> {
        std::fs::create_dir_all(dir).map_err(CliError::io)?;
        let csv_path = dir.join(format!("{}.csv", self.table_name));
        let json_path = dir.join(format!("{}.json", self.meta_name));
        write_file(&csv_path, &self.table.to_csv()?)?;
        write_file(&json_path, &pretty(&self.meta_json()))?;
        Ok(vec![
            csv_path.display().to_string(),
            json_path.display().to_string(),
        ])
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
    f.write_all(text.as_bytes()).map_err(CliError::io)
}
