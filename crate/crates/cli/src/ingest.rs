//! Series ingestion from delimited text files.

use std::fs;
use std::io;
use std::ops::Range;
use std::path::{Path, PathBuf};

use mta_core::TimeSeries;

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("ingest: file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("ingest: cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("ingest: row {row}, column {column}: cannot parse {text:?} as a number")]
    Parse { row: usize, column: usize, text: String },
    #[error("ingest: row {row} has no column {column}")]
    MissingColumn { row: usize, column: usize },
    #[error("ingest: decimation factor must be at least 1")]
    BadDecimation,
    #[error("ingest: slice {start}:{end} is outside the {len} available values")]
    SliceOutOfRange { start: usize, end: usize, len: usize },
    #[error("ingest: no values left after decimation and slicing")]
    EmptyAfterSlice,
    #[error("ingest: {0}")]
    Series(mta_core::Error),
}

/// How to pull one series out of a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSource {
    pub column: usize,
    /// Keep rows `0, k, 2k, ...`.
    pub every: usize,
    /// Applied after decimation.
    pub slice: Option<Range<usize>>,
    pub skip_header: bool,
}

impl Default for CsvSource {
    fn default() -> Self {
        Self {
            column: 0,
            every: 1,
            slice: None,
            skip_header: false,
        }
    }
}

/// Parses `a:b` into `a..b`.
pub fn parse_slice(text: &str) -> Result<Range<usize>, String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("slice {text:?} must look like START:END"))?;
    let start = a.trim().parse::<usize>().map_err(|e| format!("slice start: {e}"))?;
    let end = b.trim().parse::<usize>().map_err(|e| format!("slice end: {e}"))?;
    if end <= start {
        return Err(format!("slice end {end} must exceed start {start}"));
    }
    Ok(start..end)
}

/// Reads one value per row from a comma- or whitespace-separated file.
/// Blank lines are ignored; any other row that does not parse is an error.
pub fn load_csv(path: &Path, source: &CsvSource) -> Result<TimeSeries, IngestError> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => IngestError::FileNotFound(path.to_path_buf()),
        _ => IngestError::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    let values = parse_values(&text, source)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".to_owned());
    TimeSeries::new(values, name, path.display().to_string()).map_err(IngestError::Series)
}

pub fn parse_values(text: &str, source: &CsvSource) -> Result<Vec<f64>, IngestError> {
    if source.every == 0 {
        return Err(IngestError::BadDecimation);
    }
    let mut values = Vec::new();
    let rows = text
        .lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .skip(usize::from(source.skip_header));
    for (k, (line_no, line)) in rows.enumerate() {
        if k % source.every != 0 {
            continue;
        }
        let row = line_no + 1;
        let field = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .nth(source.column)
            .ok_or(IngestError::MissingColumn {
                row,
                column: source.column,
            })?;
        let value = field.parse::<f64>().map_err(|_| IngestError::Parse {
            row,
            column: source.column,
            text: field.to_owned(),
        })?;
        values.push(value);
    }
    if let Some(range) = &source.slice {
        if range.end > values.len() {
            return Err(IngestError::SliceOutOfRange {
                start: range.start,
                end: range.end,
                len: values.len(),
            });
        }
        values = values[range.clone()].to_vec();
    }
    if values.is_empty() {
        return Err(IngestError::EmptyAfterSlice);
    }
    Ok(values)
}
