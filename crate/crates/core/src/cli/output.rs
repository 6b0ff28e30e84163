//! Report tables and their CSV/JSON serialization.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Provenance carried by every report.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Header {
    pub q: Option<Rational>,
    pub n: Option<usize>,
    pub depth: Option<usize>,
    pub cap: Option<usize>,
}

impl Header {
    fn to_json(&self) -> Value {
        json!({
            "q": self.q.as_ref().map(format_rational),
            "N": self.n,
            "depth": self.depth,
            "cap": self.cap,
            "arithmetic_mode": "exact",
            "tool_version": TOOL_VERSION,
        })
    }

    fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![
            opt(self.q.as_ref().map(format_rational)),
            opt(self.n.map(|v| v.to_string())),
            opt(self.depth.map(|v| v.to_string())),
            opt(self.cap.map(|v| v.to_string())),
            "exact".into(),
            TOOL_VERSION.into(),
        ]
    }
}

const HEADER_COLUMNS: [&str; 6] = ["q", "N", "depth", "cap", "arithmetic_mode", "tool_version"];

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Header,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: Header, columns: &[&'static str]) -> Self {
        Self {
            name: name.into(),
            header,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// File stem: the table name, plus the grid point when there is one.
    pub fn stem(&self) -> String {
        let mut s = self.name.clone();
        if let Some(q) = &self.header.q {
            s.push_str("-q");
            s.push_str(&format_rational(q).replace('/', "_"));
        }
        if let Some(n) = self.header.n {
            s.push_str(&format!("-N{n}"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    m.insert((*c).to_string(), v.clone());
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "table": self.name,
            "header": self.header.to_json(),
            "columns": self.columns,
            "rows": rows,
        })
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(HEADER_COLUMNS.iter().copied().chain(self.columns.iter().copied()))
            .map_err(csv_err)?;
        let meta = self.header.csv_fields();
        for row in &self.rows {
            let fields = meta.iter().cloned().chain(row.iter().map(cell));
            w.write_record(fields).map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())
                    .map_err(|e| Error::Io(e.to_string()))?;
                s.push('\n');
                Ok(s.into_bytes())
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes through a sibling temp file and renames, so readers never see a
/// partial report.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_table(dir: &Path, table: &Table, formats: &[Format]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::with_capacity(formats.len());
    for &f in formats {
        let path = dir.join(format!("{}.{}", table.stem(), f.extension()));
        write_atomic(&path, &table.render(f)?)?;
        out.push(path);
    }
    Ok(out)
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(format!("{x}")))
}
