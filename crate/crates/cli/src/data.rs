//! CSV ingestion: comma separated numbers, `.` decimals, an optional single
//! header row. Returns files have one column; regression files have the
//! design columns followed by the 0/1 response.

use std::fs::File;
use std::path::{Path, PathBuf};

use smmala::targets::{BinaryData, ReturnSeries};

use crate::error::{CliError, Result};

/// Numeric rows with the file line each came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Option<Vec<String>>,
    pub columns: usize,
    pub rows: Vec<Vec<f64>>,
    pub lines: Vec<u64>,
}

fn line_error(path: &Path, line: u64, message: impl Into<String>) -> CliError {
    CliError::DataLine { path: path.to_path_buf(), line, message: message.into() }
}

fn file_error(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Data { path: path.to_path_buf(), message: message.into() }
}

pub fn read_table(path: &Path) -> Result<Table> {
    let file = File::open(path).map_err(|e| file_error(path, e.to_string()))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(file);
    let mut header: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut lines = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| match e.position() {
            Some(p) => line_error(path, p.line(), e.to_string()),
            None => file_error(path, e.to_string()),
        })?;
        let line = record.position().map_or(k as u64 + 1, |p| p.line());
        if record.iter().all(|c| c.trim().is_empty()) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, usize> =
            record.iter().enumerate().map(|(j, c)| c.trim().parse::<f64>().map_err(|_| j)).collect();
        match parsed {
            Ok(v) => {
                if let Some(bad) = v.iter().position(|x| !x.is_finite()) {
                    return Err(line_error(path, line, format!("column {} is not finite", bad + 1)));
                }
                if let Some(first) = rows.first() {
                    if v.len() != first.len() {
                        return Err(line_error(path, line, format!("expected {} columns, found {}", first.len(), v.len())));
                    }
                }
                rows.push(v);
                lines.push(line);
            }
            Err(_) if line == 1 && header.is_none() => {
                header = Some(record.iter().map(|c| c.trim().to_string()).collect());
            }
            Err(j) => {
                return Err(line_error(path, line, format!("column {}: {:?} is not a number", j + 1, &record[j])));
            }
        }
    }
    if rows.is_empty() {
        return Err(file_error(path, "no data rows"));
    }
    let columns = rows[0].len();
    if let Some(h) = &header {
        if h.len() != columns {
            return Err(line_error(path, 1, format!("header has {} columns, data has {columns}", h.len())));
        }
    }
    Ok(Table { header, columns, rows, lines })
}

pub fn read_returns(path: &Path) -> Result<ReturnSeries> {
    let t = read_table(path)?;
    if t.columns != 1 {
        return Err(file_error(path, format!("returns file needs 1 column, found {}", t.columns)));
    }
    ReturnSeries::new(t.rows.into_iter().map(|r| r[0]).collect()).map_err(CliError::Model)
}

pub fn read_binary(path: &Path) -> Result<BinaryData> {
    let t = read_table(path)?;
    if t.columns < 2 {
        return Err(file_error(path, "regression file needs design columns and a response column"));
    }
    let d = t.columns - 1;
    let mut x = Vec::with_capacity(t.rows.len() * d);
    let mut y = Vec::with_capacity(t.rows.len());
    for (row, &line) in t.rows.iter().zip(&t.lines) {
        let r = row[d];
        if r != 0.0 && r != 1.0 {
            return Err(line_error(path, line, format!("response {r} is not 0 or 1")));
        }
        x.extend_from_slice(&row[..d]);
        y.push(r);
    }
    BinaryData::new(d, x, y).map_err(CliError::Model)
}

/// What `ingest-check` found.
#[derive(Debug, Clone, PartialEq)]
pub enum Dataset {
    Returns(ReturnSeries),
    Binary(BinaryData),
}

impl Dataset {
    pub fn describe(&self) -> String {
        match self {
            Dataset::Returns(r) => format!("returns: {} observations", r.len()),
            Dataset::Binary(b) => format!("binary regression: n = {}, d = {}", b.n(), b.d()),
        }
    }
}

/// One column: returns. More: design plus response.
pub fn ingest(path: &Path) -> Result<Dataset> {
    let t = read_table(path)?;
    if t.columns == 1 {
        read_returns(path).map(Dataset::Returns)
    } else {
        read_binary(path).map(Dataset::Binary)
    }
}

pub fn write_returns(path: &Path, series: &ReturnSeries) -> Result<()> {
    let out = |e: std::io::Error| CliError::Output { path: PathBuf::from(path), source: e };
    let mut s = String::from("return\n");
    for v in series.values() {
        s.push_str(&format!("{v:.16e}\n"));
    }
    std::fs::write(path, s).map_err(out)
}
