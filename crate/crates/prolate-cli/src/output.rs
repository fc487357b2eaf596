//! Figure data container and its CSV / JSON emission.
//!
//! CSV bodies are deterministic: header row plus data rows, `,` delimiter,
//! `\n` line endings, every float printed with 17 significant digits so
//! values round-trip exactly. JSON output carries the metadata block
//! (parameter echo, timestamp, tool version) alongside the columns.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    pub params: serde_json::Value,
    pub timestamp: String,
    pub version: String,
}

/// Labeled numeric series backing one figure or spectrum dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FigureSeries {
    pub name: String,
    pub columns: Vec<Column>,
    pub metadata: Metadata,
}

impl FigureSeries {
    pub fn new(name: &str, params: serde_json::Value) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_else(|_| "0".into());
        Self {
            name: name.to_string(),
            columns: Vec::new(),
            metadata: Metadata {
                params,
                timestamp,
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
        }
    }

    pub fn push_column(&mut self, name: &str, values: Vec<f64>) {
        self.columns.push(Column {
            name: name.to_string(),
            values,
        });
    }

    fn check_rectangular(&self) -> Result<usize> {
        let rows = self.columns.first().map(|c| c.values.len()).unwrap_or(0);
        for c in &self.columns {
            if c.values.len() != rows {
                bail!(
                    "column {} has {} rows, expected {}",
                    c.name,
                    c.values.len(),
                    rows
                );
            }
        }
        Ok(rows)
    }

    /// CSV body: header plus rows, no metadata.
    pub fn to_csv(&self) -> Result<String> {
        let rows = self.check_rectangular()?;
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for r in 0..rows {
            let row: Vec<String> = self
                .columns
                .iter()
                .map(|c| format_float(c.values[r]))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        self.check_rectangular()?;
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// 17 significant digits, scientific notation: exact f64 round-trip.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn emit(series: &FigureSeries, format: Format, out: Option<&std::path::Path>) -> Result<()> {
    let body = match format {
        Format::Csv => series.to_csv()?,
        Format::Json => series.to_json()?,
    };
    write_out(&body, out)
}

pub fn write_out(body: &str, out: Option<&std::path::Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            std::io::stdout().write_all(body.as_bytes())?;
        }
    }
    Ok(())
}
