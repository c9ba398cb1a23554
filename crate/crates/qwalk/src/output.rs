//! CSV tables with JSON sidecars, written atomically.
//!
//! Every table is comma-separated UTF-8 with LF line endings and a header
//! row. Numbers use `.` as decimal separator and round-trip exactly. The
//! sidecar `<name>.json` next to `<name>.csv` holds the configuration, the
//! code version and derived quantities.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::{AppError, AppResult, ExperimentConfig};

/// `CARGO_PKG_VERSION` of this crate.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A rectangular table of numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv_bytes(&self) -> AppResult<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format_number(*v)))?;
        }
        w.into_inner().map_err(|e| AppError::io("<buffer>", e.into_error()))
    }

    pub fn read_csv(path: &Path) -> AppResult<Self> {
        let mut r = csv::Reader::from_path(path)?;
        let header = r.headers()?.iter().map(str::to_owned).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|s| {
                    if s.is_empty() {
                        Ok(f64::NAN)
                    } else {
                        s.parse::<f64>()
                            .map_err(|e| AppError::Config(format!("{}: {s:?}: {e}", path.display())))
                    }
                })
                .collect::<AppResult<Vec<f64>>>()?;
            rows.push(row);
        }
        Ok(Self { header, rows })
    }
}

/// Shortest text that parses back to the same `f64`; empty for NaN.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:?}")
    }
}

/// Writes `bytes` to a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> AppResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(|e| AppError::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| AppError::io(&tmp, e))?;
    f.sync_all().map_err(|e| AppError::io(&tmp, e))?;
    drop(f);
    fs::rename(&tmp, path).map_err(|e| AppError::io(path, e))
}

/// Standard sidecar: experiment config, code version and `extra`.
pub fn sidecar(cfg: &ExperimentConfig, extra: Value) -> Value {
    json!({
        "code_version": CODE_VERSION,
        "config": cfg,
        "derived": extra,
    })
}

/// Writes `<dir>/<name>.csv` and `<dir>/<name>.json`; returns the CSV path.
pub fn write_table(dir: &Path, name: &str, table: &Table, meta: &Value) -> AppResult<PathBuf> {
    let csv_path = dir.join(format!("{name}.csv"));
    write_atomic(&csv_path, &table.to_csv_bytes()?)?;
    let mut json = serde_json::to_vec_pretty(meta)?;
    json.push(b'\n');
    write_atomic(&dir.join(format!("{name}.json")), &json)?;
    log::info!("wrote {}", csv_path.display());
    Ok(csv_path)
}
