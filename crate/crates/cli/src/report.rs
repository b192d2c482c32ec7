use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use bernstein_core::prelude::Real;
use serde_json::{json, Map, Value};

use crate::args::Format;

pub const SCHEMA: &str = "bernstein-lab/report/v1";

/// Full-precision decimal string.
pub fn num<T: Real>(x: T) -> Value {
    Value::String(x.to_decimal(T::decimal_digits()))
}

pub fn nums<T: Real>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Shortest round-trip form of an `f64`.
pub fn f(x: f64) -> String {
    format!("{x:?}")
}

pub fn cell<T: Real>(x: T) -> String {
    x.to_decimal(T::decimal_digits())
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<Vec<u8>, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(|e| e.to_string())?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| e.to_string())?;
        }
        w.into_inner().map_err(|e| e.to_string())
    }
}

/// Result of one command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub input: Map<String, Value>,
    pub result: Value,
    pub table: Table,
    /// Set when the run ended in a numerical failure.
    pub error: Option<String>,
}

impl Report {
    pub fn json(&self, scalar: &str, bits: u32) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "status": if self.error.is_some() { "error" } else { "ok" },
            "scalar": scalar,
            "mantissa_bits": bits,
            "input": self.input,
            "result": self.result,
            "error": self.error,
        })
    }
}

pub fn destination(output: Option<&Path>, out_dir: &Path, command: &str, format: Format) -> PathBuf {
    match output {
        Some(p) => p.to_path_buf(),
        None => {
            let ext = match format {
                Format::Json => "json",
                Format::Csv => "csv",
            };
            out_dir.join(format!("{command}.{ext}"))
        }
    }
}

/// Writes the report; returns the path written, or `None` for stdout.
pub fn write(report: &Report, scalar: &str, bits: u32, format: Format, dest: &Path) -> Result<Option<PathBuf>, String> {
    let bytes = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json(scalar, bits)).map_err(|e| e.to_string())?;
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => report.table.to_csv()?,
    };
    if dest == Path::new("-") {
        std::io::stdout().write_all(&bytes).map_err(|e| e.to_string())?;
        return Ok(None);
    }
    if let Some(dir) = dest.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        }
    }
    fs::write(dest, bytes).map_err(|e| format!("cannot write {}: {e}", dest.display()))?;
    Ok(Some(dest.to_path_buf()))
}
