//! Result emission. JSON is the source of truth; CSV is a flattened view of
//! the same results for spreadsheet-style consumption.

use fairsample_core::error::Error;
use fairsample_core::Result;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutFormat::Json),
            "csv" => Ok(OutFormat::Csv),
            other => Err(Error::Contract(format!(
                "unknown format {other:?}; expected json or csv"
            ))),
        }
    }
}

/// Flat tabular view of a result document.
pub trait CsvTable {
    fn csv_header() -> &'static [&'static str];
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Render a result in the requested format. Identical inputs produce
/// byte-identical output.
pub fn emit_string<T: Serialize + CsvTable>(value: &T, format: OutFormat) -> Result<String> {
    match format {
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(value)
                .map_err(|e| Error::Contract(format!("serialization failed: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        OutFormat::Csv => {
            let mut out = String::new();
            out.push_str(&T::csv_header().join(","));
            out.push('\n');
            for row in value.csv_rows() {
                let cells: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Write a result to `path`, or to stdout when no path is given.
pub fn emit<T: Serialize + CsvTable>(
    value: &T,
    format: OutFormat,
    path: Option<&Path>,
) -> Result<()> {
    let rendered = emit_string(value, format)?;
    match path {
        Some(path) => {
            std::fs::write(path, rendered).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("cannot write {}: {e}", path.display()),
                ))
            })?;
        }
        None => {
            std::io::stdout()
                .write_all(rendered.as_bytes())
                .map_err(Error::Io)?;
        }
    }
    Ok(())
}
