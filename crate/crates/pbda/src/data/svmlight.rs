//! SVM-light sparse text format: one example per line,
//! `label index:value index:value ...` with 1-based strictly ascending
//! indices.  Rows are densified to the largest index seen anywhere in the
//! file.

use std::fs;
use std::path::Path;

use nalgebra::DVector;

use crate::data::LabeledSample;
use crate::error::{Error, Result};

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Load a labeled sample from an SVM-light file.
///
/// Labels are mapped `≤ 0 → −1`, `> 0 → +1`.  Blank lines are skipped.
pub fn load_svmlight(path: impl AsRef<Path>) -> Result<LabeledSample> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;

    // first pass: sparse rows + the global max index
    let mut rows: Vec<(i8, Vec<(usize, f64)>)> = Vec::new();
    let mut max_index = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let label_str = fields.next().expect("non-empty line has a first field");
        let label_val: f64 = label_str
            .parse()
            .map_err(|_| parse_err(path, lineno, format!("bad label `{label_str}`")))?;
        if !label_val.is_finite() {
            return Err(parse_err(path, lineno, format!("bad label `{label_str}`")));
        }
        let label: i8 = if label_val > 0.0 { 1 } else { -1 };

        let mut entries: Vec<(usize, f64)> = Vec::new();
        let mut prev_index = 0usize;
        for field in fields {
            let (idx_str, val_str) = field.split_once(':').ok_or_else(|| {
                parse_err(path, lineno, format!("expected `index:value`, got `{field}`"))
            })?;
            let idx: usize = idx_str
                .parse()
                .map_err(|_| parse_err(path, lineno, format!("bad index `{idx_str}`")))?;
            if idx == 0 {
                return Err(parse_err(path, lineno, "indices are 1-based, got 0"));
            }
            if idx <= prev_index {
                return Err(parse_err(
                    path,
                    lineno,
                    format!("indices must be strictly ascending, got {idx} after {prev_index}"),
                ));
            }
            let val: f64 = val_str
                .parse()
                .map_err(|_| parse_err(path, lineno, format!("bad value `{val_str}`")))?;
            if !val.is_finite() {
                return Err(parse_err(path, lineno, format!("non-finite value `{val_str}`")));
            }
            prev_index = idx;
            entries.push((idx, val));
        }
        if entries.iter().all(|&(_, v)| v == 0.0) {
            return Err(parse_err(path, lineno, "feature row has zero norm"));
        }
        max_index = max_index.max(prev_index);
        rows.push((label, entries));
    }

    if rows.is_empty() {
        return Err(parse_err(path, 0, "file contains no examples"));
    }

    // second pass: densify to the common dimension
    let mut features = Vec::with_capacity(rows.len());
    let mut labels = Vec::with_capacity(rows.len());
    for (label, entries) in rows {
        let mut x = DVector::zeros(max_index);
        for (idx, val) in entries {
            x[idx - 1] = val;
        }
        features.push(x);
        labels.push(label);
    }
    LabeledSample::new(features, labels)
}
