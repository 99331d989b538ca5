//! CSV ingestion with an explicit column schema.
//!
//! The label mapping is always declared by the caller; nothing is inferred
//! from the data, so a polarity flip cannot slip in silently.

use super::{Dataset, Label, LabeledPoint};
use crate::error::{Error, Result};
use std::path::Path;

/// How the two label values are spelled in the file.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LabelMap {
    pub neg: String,
    pub pos: String,
}

impl LabelMap {
    /// Parse the `neg=0,pos=1` flag syntax.
    pub fn parse(s: &str) -> Result<Self> {
        let mut neg = None;
        let mut pos = None;
        for part in s.split(',') {
            match part.split_once('=') {
                Some(("neg", v)) => neg = Some(v.to_string()),
                Some(("pos", v)) => pos = Some(v.to_string()),
                _ => {
                    return Err(Error::Contract(format!(
                        "bad label-map component {part:?}; expected neg=<v>,pos=<v>"
                    )))
                }
            }
        }
        match (neg, pos) {
            (Some(neg), Some(pos)) => Ok(LabelMap { neg, pos }),
            _ => Err(Error::Contract(
                "label map must define both neg= and pos=".into(),
            )),
        }
    }
}

/// Column roles for [`load_csv`]. Columns are referenced by header name; a
/// header row is required.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CsvSchema {
    pub label_col: String,
    pub group_col: String,
    pub feature_cols: Vec<String>,
    pub timestamp_col: Option<String>,
    pub label_map: LabelMap,
    /// Field delimiter; defaults to a comma.
    pub delimiter: u8,
}

impl CsvSchema {
    pub fn new(
        label_col: impl Into<String>,
        group_col: impl Into<String>,
        feature_cols: Vec<String>,
        label_map: LabelMap,
    ) -> Self {
        CsvSchema {
            label_col: label_col.into(),
            group_col: group_col.into(),
            feature_cols,
            timestamp_col: None,
            label_map,
            delimiter: b',',
        }
    }
}

fn column_index(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::Contract(format!("column {name:?} not found in header")))
}

/// Load a dataset from a delimited UTF-8 file, preserving row order. Every
/// malformed cell is reported with its 1-based data row number.
pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<Dataset> {
    if schema.feature_cols.is_empty() {
        return Err(Error::Contract("schema names no feature columns".into()));
    }
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter)
        .has_headers(true)
        .from_path(path.as_ref())
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                Error::Io(std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    format!("cannot open {}: {e}", path.as_ref().display()),
                ))
            }
            _ => Error::Csv(e),
        })?;

    let headers = reader.headers()?.clone();
    let label_idx = column_index(&headers, &schema.label_col)?;
    let group_idx = column_index(&headers, &schema.group_col)?;
    let feature_idx: Vec<usize> = schema
        .feature_cols
        .iter()
        .map(|c| column_index(&headers, c))
        .collect::<Result<_>>()?;
    let ts_idx = schema
        .timestamp_col
        .as_ref()
        .map(|c| column_index(&headers, c))
        .transpose()?;

    let mut points = Vec::new();
    let mut timestamps = Vec::new();
    for (row0, record) in reader.records().enumerate() {
        let row = row0 + 1;
        let record = record?;
        let cell = |idx: usize| -> Result<&str> {
            record.get(idx).ok_or_else(|| Error::CsvRow {
                row,
                msg: format!("missing field {idx}"),
            })
        };

        let mut x = Vec::with_capacity(feature_idx.len());
        for (&idx, name) in feature_idx.iter().zip(&schema.feature_cols) {
            let raw = cell(idx)?;
            let v: f64 = raw.trim().parse().map_err(|_| Error::CsvRow {
                row,
                msg: format!("non-numeric feature {name:?}: {raw:?}"),
            })?;
            x.push(v);
        }

        let raw_label = cell(label_idx)?.trim();
        let y = if raw_label == schema.label_map.neg {
            Label::Neg
        } else if raw_label == schema.label_map.pos {
            Label::Pos
        } else {
            return Err(Error::CsvRow {
                row,
                msg: format!(
                    "label {raw_label:?} outside declared mapping (neg={:?}, pos={:?})",
                    schema.label_map.neg, schema.label_map.pos
                ),
            });
        };

        let raw_group = cell(group_idx)?.trim();
        let a: i64 = raw_group.parse().map_err(|_| Error::CsvRow {
            row,
            msg: format!("non-integer group id {raw_group:?}"),
        })?;
        if a < 0 {
            return Err(Error::CsvRow {
                row,
                msg: format!("negative group id {a}"),
            });
        }

        if let Some(idx) = ts_idx {
            let raw_ts = cell(idx)?.trim();
            let ts: u64 = raw_ts.parse().map_err(|_| Error::CsvRow {
                row,
                msg: format!("non-integer timestamp {raw_ts:?}"),
            })?;
            timestamps.push(ts);
        }

        points.push(LabeledPoint::new(x, y, a as usize));
    }

    let dataset = Dataset::new(points)?;
    if ts_idx.is_some() {
        dataset.with_timestamps(timestamps)
    } else {
        Ok(dataset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(contents: &str) -> std::path::PathBuf {
        let mut path = std::env::temp_dir();
        let unique = format!(
            "fairsample-csv-{}-{}.csv",
            std::process::id(),
            contents.len()
        );
        path.push(unique);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    fn schema01() -> CsvSchema {
        CsvSchema::new(
            "label",
            "group",
            vec!["f1".into(), "f2".into()],
            LabelMap {
                neg: "0".into(),
                pos: "1".into(),
            },
        )
    }

    #[test]
    fn loads_and_maps_labels() {
        let path = write_temp("f1,f2,label,group\n1.0,2.0,0,0\n3.0,4.0,1,1\n5.0,6.0,1,0\n");
        let d = load_csv(&path, &schema01()).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(d.len(), 3);
        assert_eq!(d.group_count(), 2);
        assert_eq!(d.point(0).y, Label::Neg);
        assert_eq!(d.point(1).y, Label::Pos);
        assert_eq!(d.point(0).x, vec![1.0, 2.0]);
    }

    #[test]
    fn bad_label_names_row() {
        let path = write_temp("f1,f2,label,group\n1.0,2.0,0,0\n3.0,4.0,2,1\n");
        let err = load_csv(&path, &schema01()).unwrap_err();
        std::fs::remove_file(&path).ok();
        let msg = err.to_string();
        assert!(msg.contains("row 2"), "got: {msg}");
        assert!(msg.contains("label"), "got: {msg}");
    }

    #[test]
    fn non_numeric_feature_names_row() {
        let path = write_temp("f1,f2,label,group\nx,2.0,0,0\n");
        let err = load_csv(&path, &schema01()).unwrap_err();
        std::fs::remove_file(&path).ok();
        assert!(err.to_string().contains("row 1"));
    }

    #[test]
    fn negative_group_rejected() {
        let path = write_temp("f1,f2,label,group\n1.0,2.0,0,-3\n");
        let err = load_csv(&path, &schema01()).unwrap_err();
        std::fs::remove_file(&path).ok();
        assert!(err.to_string().contains("negative group"));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_csv("/nonexistent/nope.csv", &schema01()).unwrap_err();
        assert!(!err.is_contract());
    }

    #[test]
    fn custom_delimiter_is_honored() {
        let mut schema = schema01();
        schema.delimiter = b';';
        let path = write_temp("f1;f2;label;group\n1.0;2.0;0;0\n3.0;4.0;1;1\n");
        let d = load_csv(&path, &schema).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(d.len(), 2);
        assert_eq!(d.point(1).x, vec![3.0, 4.0]);
    }

    #[test]
    fn timestamps_are_read() {
        let mut schema = schema01();
        schema.timestamp_col = Some("ts".into());
        let path = write_temp("f1,f2,label,group,ts\n1.0,2.0,0,0,5\n3.0,4.0,1,1,2\n");
        let d = load_csv(&path, &schema).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(d.timestamps(), Some(&[5, 2][..]));
    }
}
