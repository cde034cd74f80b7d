//! Sweep results and their CSV form.
//!
//! A CSV file starts with `# key: value` metadata lines, then a header row,
//! then one row per axis value. Floats are written in shortest round-trip
//! form. An infinite SIR is an empty cell, with a `1` in the matching
//! `no_interference` column.

use std::path::Path;

use xlink_core::link::to_db;

use crate::error::{Error, Result};

/// Interference and SIR at one table cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub interference_w: f64,
    pub sir_linear: f64,
}

impl Point {
    pub fn sir_db(&self) -> f64 {
        to_db(self.sir_linear)
    }

    pub fn no_interference(&self) -> bool {
        self.sir_linear.is_infinite()
    }
}

/// One curve: analytic and oracle values along the axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub analytic: Vec<Point>,
    pub oracle: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    /// Header of the axis column.
    pub axis: String,
    pub axis_values: Vec<f64>,
    pub series: Vec<Series>,
    pub metadata: Vec<(String, String)>,
}

impl SweepTable {
    pub fn series(&self, label: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.label == label)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.series.iter().map(|s| s.label.as_str()).collect()
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn set_meta(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.metadata.push((key.to_string(), value)),
        }
    }

    /// Largest |analytic − oracle| in dB over cells where both are finite,
    /// `+∞` if the two disagree on whether a cell has interference.
    pub fn max_db_discrepancy(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for s in &self.series {
            for (a, o) in s.analytic.iter().zip(&s.oracle) {
                match (a.no_interference(), o.no_interference()) {
                    (true, true) => {}
                    (false, false) => worst = worst.max((a.sir_db() - o.sir_db()).abs()),
                    _ => return f64::INFINITY,
                }
            }
        }
        worst
    }

    /// Largest relative interference discrepancy over cells with interference.
    pub fn max_relative_power_discrepancy(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for s in &self.series {
            for (a, o) in s.analytic.iter().zip(&s.oracle) {
                if a.interference_w == 0.0 && o.interference_w == 0.0 {
                    continue;
                }
                let scale = a.interference_w.abs().max(o.interference_w.abs());
                worst = worst.max((a.interference_w - o.interference_w).abs() / scale);
            }
        }
        worst
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec![self.axis.clone()];
        for s in &self.series {
            for method in ["analytic", "oracle"] {
                h.push(format!("{method}_interference_w[{}]", s.label));
                h.push(format!("{method}_sir_db[{}]", s.label));
                h.push(format!("{method}_no_interference[{}]", s.label));
            }
        }
        h
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header())?;
        for (row, x) in self.axis_values.iter().enumerate() {
            let mut rec = vec![format_float(*x)];
            for s in &self.series {
                for p in [&s.analytic[row], &s.oracle[row]] {
                    rec.push(format_float(p.interference_w));
                    if p.no_interference() {
                        rec.push(String::new());
                        rec.push("1".into());
                    } else {
                        rec.push(format_float(p.sir_db()));
                        rec.push("0".into());
                    }
                }
            }
            w.write_record(&rec)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::io("<csv buffer>", e.into_error()))?;
        out.push_str(std::str::from_utf8(&bytes).expect("csv output is UTF-8"));
        Ok(out)
    }
}

/// Shortest text that parses back to the same `f64`. Zero is always written
/// as `0` (empty float sums come out as `-0.0`).
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn write_csv(table: &SweepTable, path: &Path) -> Result<()> {
    std::fs::write(path, table.to_csv_string()?).map_err(|e| Error::io(path, e))
}

/// A CSV file read back: metadata, header and cells (`None` for empty).
#[derive(Debug, Clone, PartialEq)]
pub struct CsvData {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl CsvData {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

pub fn read_csv(text: &str) -> Result<CsvData> {
    let mut metadata = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        if let Some(meta) = line.strip_prefix("# ") {
            let (k, v) = meta.split_once(": ").unwrap_or((meta, ""));
            metadata.push((k.to_string(), v.to_string()));
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let mut r = csv::ReaderBuilder::new().from_reader(body.as_bytes());
    let header = r.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|cell| {
                if cell.is_empty() {
                    Ok(None)
                } else {
                    cell.parse()
                        .map(Some)
                        .map_err(|_| Error::config("csv", format!("bad number {cell:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(CsvData {
        metadata,
        header,
        rows,
    })
}
