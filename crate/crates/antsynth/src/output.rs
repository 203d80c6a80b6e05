//! Artifact writers. Floats are written with Rust's shortest round-trip
//! formatting, so every value parses back to the same `f64`.

use std::fs;
use std::path::Path;

use antsynth_core::array::RadiationPattern;
use serde::Serialize;

use crate::error::{HarnessError, Result};

fn write_file(path: &Path, contents: String) -> Result<()> {
    fs::write(path, contents).map_err(|source| HarnessError::Write { path: path.to_path_buf(), source })
}

fn write_csv<R: Serialize>(path: &Path, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let fail = |e: csv::Error| HarnessError::Serialize(format!("{}: {e}", path.display()));
    writer.write_record(header).map_err(fail)?;
    for row in rows {
        writer.serialize(row).map_err(fail)?;
    }
    let bytes = writer.into_inner().map_err(|e| HarnessError::Serialize(e.to_string()))?;
    write_file(path, String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `theta_deg,af_linear,af_db`, one row per grid point.
pub fn write_pattern_csv(path: &Path, pattern: &RadiationPattern) -> Result<()> {
    let rows = pattern.theta_deg().iter().zip(pattern.af_linear()).zip(pattern.af_db()).map(|((t, l), d)| (*t, *l, *d));
    write_csv(path, &["theta_deg", "af_linear", "af_db"], rows)
}

/// `iteration,best_fitness`, iterations counted from 1.
pub fn write_convergence_csv(path: &Path, history: &[f64]) -> Result<()> {
    write_csv(path, &["iteration", "best_fitness"], history.iter().enumerate().map(|(i, f)| (i + 1, *f)))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| HarnessError::Serialize(e.to_string()))?;
    text.push('\n');
    write_file(path, text)
}

pub(crate) fn write_rows<R: Serialize>(path: &Path, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<()> {
    write_csv(path, header, rows)
}
