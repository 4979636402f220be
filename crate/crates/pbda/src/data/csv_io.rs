//! Dense numeric CSV ingestion/emission.  Files carry a header row; the
//! label column (when present) holds −1/+1 and every other column is a
//! feature.

use std::fs;
use std::path::Path;

use nalgebra::DVector;

use crate::data::{LabeledSample, UnlabeledSample};
use crate::error::{Error, Result};

/// Result of [`load_csv`]: labeled when a label column was named.
#[derive(Debug, Clone)]
pub enum LoadedSample {
    Labeled(LabeledSample),
    Unlabeled(UnlabeledSample),
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Load a CSV with header.  With `label_column = Some(name)` that column is
/// split off as −1/+1 labels; with `None` every column is a feature.
pub fn load_csv(path: impl AsRef<Path>, label_column: Option<&str>) -> Result<LoadedSample> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| parse_err(path, 1, e.to_string()))?;

    let headers = reader
        .headers()
        .map_err(|e| parse_err(path, 1, e.to_string()))?
        .clone();
    let label_idx = match label_column {
        Some(name) => Some(
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::arg(format!("label column `{name}` not found in {}", path.display())))?,
        ),
        None => None,
    };

    let mut features: Vec<DVector<f64>> = Vec::new();
    let mut labels: Vec<i8> = Vec::new();
    for (recno, record) in reader.records().enumerate() {
        // header is line 1, first record line 2
        let lineno = recno + 2;
        let record = record.map_err(|e| {
            // the csv crate reports ragged rows as errors with their own
            // position; prefer ours for a uniform message shape
            parse_err(path, lineno, e.to_string())
        })?;
        let mut row = Vec::with_capacity(record.len().saturating_sub(label_idx.is_some() as usize));
        for (col, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| {
                parse_err(
                    path,
                    lineno,
                    format!("column `{}`: non-numeric cell `{cell}`", &headers[col]),
                )
            })?;
            if !value.is_finite() {
                return Err(parse_err(
                    path,
                    lineno,
                    format!("column `{}`: non-finite cell `{cell}`", &headers[col]),
                ));
            }
            if Some(col) == label_idx {
                if value == 1.0 {
                    labels.push(1);
                } else if value == -1.0 {
                    labels.push(-1);
                } else {
                    return Err(parse_err(
                        path,
                        lineno,
                        format!("labels must be −1 or +1, got `{cell}`"),
                    ));
                }
            } else {
                row.push(value);
            }
        }
        if row.iter().all(|&v| v == 0.0) {
            return Err(parse_err(path, lineno, "feature row has zero norm"));
        }
        features.push(DVector::from_vec(row));
    }

    if features.is_empty() {
        return Err(parse_err(path, 0, "file contains no data rows"));
    }
    Ok(match label_idx {
        Some(_) => LoadedSample::Labeled(LabeledSample::new(features, labels)?),
        None => LoadedSample::Unlabeled(UnlabeledSample::new(features)?),
    })
}

/// [`load_csv`] that must produce a labeled sample.
pub fn load_labeled_csv(path: impl AsRef<Path>, label_column: &str) -> Result<LabeledSample> {
    match load_csv(path, Some(label_column))? {
        LoadedSample::Labeled(s) => Ok(s),
        LoadedSample::Unlabeled(_) => unreachable!("label column was given"),
    }
}

/// [`load_csv`] that treats every column as a feature.
pub fn load_unlabeled_csv(path: impl AsRef<Path>) -> Result<UnlabeledSample> {
    match load_csv(path, None)? {
        LoadedSample::Unlabeled(s) => Ok(s),
        LoadedSample::Labeled(_) => unreachable!("no label column was given"),
    }
}

/// Write a labeled sample as CSV with header `x1,…,xd,y`.  Floats carry 17
/// significant digits so a reload reproduces the sample bit for bit.
pub fn save_csv(sample: &LabeledSample, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    for j in 1..=sample.dim() {
        out.push_str(&format!("x{j},"));
    }
    out.push_str("y\n");
    for (x, y) in sample.features().iter().zip(sample.labels()) {
        for v in x.iter() {
            out.push_str(&format!("{v:.16e},"));
        }
        out.push_str(&format!("{y}\n"));
    }
    fs::write(path, out)?;
    Ok(())
}
