use std::fs::File;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sample::Sample;

/// Values read from one CSV column.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub sample: Sample<f64>,
    /// Rows whose cell was missing, empty, non-numeric or non-finite.
    pub skipped: usize,
    pub warnings: Vec<String>,
}

/// Reads column `column` of a CSV file: a header name when `header` is set,
/// otherwise a 1-based column index.
pub fn ingest_csv(path: &Path, column: &str, header: bool) -> Result<Ingested> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let index = if header {
        let names = reader.headers()?.clone();
        names.iter().position(|h| h == column).ok_or_else(|| {
            Error::Schema(format!(
                "column '{column}' not found; available columns: {}",
                names.iter().collect::<Vec<_>>().join(", ")
            ))
        })?
    } else {
        match column.parse::<usize>() {
            Ok(i) if i >= 1 => i - 1,
            _ => {
                return Err(Error::Config(format!(
                    "without a header row the column must be a 1-based index, got '{column}'"
                )))
            }
        }
    };

    let mut values = Vec::new();
    let mut skipped = 0;
    for record in reader.records() {
        let record = record?;
        match record.get(index).and_then(|cell| cell.parse::<f64>().ok()) {
            Some(v) if v.is_finite() => values.push(v),
            _ => skipped += 1,
        }
    }

    let mut warnings = Vec::new();
    if skipped > 0 {
        warnings.push(format!(
            "{skipped} row{} skipped: missing or non-numeric value in column '{column}'",
            if skipped == 1 { "" } else { "s" }
        ));
    }
    if values.is_empty() {
        return Err(Error::EmptyData(format!(
            "column '{column}' of {} has no numeric values",
            path.display()
        )));
    }
    let outside = values.iter().filter(|v| !(0.0..=100.0).contains(*v)).count();
    if outside > 0 {
        warnings.push(format!("{outside} value(s) fall outside the 0-100 mark scale"));
    }

    let sample = Sample::new(values)?.with_source(format!("{}#{column}", path.display()));
    Ok(Ingested {
        sample,
        skipped,
        warnings,
    })
}
