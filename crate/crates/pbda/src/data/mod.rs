//! Dataset containers, file ingestion, synthetic toys, and fold splitting.
//!
//! Feature vectors are dense [`nalgebra::DVector`]s; labels are `i8` values
//! restricted to −1/+1 (0 is rejected everywhere, never coerced).  Row norms
//! are computed once at construction because every estimator and objective
//! in this crate consumes *normalized* margins ⟨w,x⟩/‖x‖.

mod csv_io;
mod folds;
mod svmlight;
mod toy;

pub use csv_io::{load_csv, load_labeled_csv, load_unlabeled_csv, save_csv, LoadedSample};
pub use folds::kfold_split;
pub use svmlight::load_svmlight;
pub use toy::{gen_toy, ToyKind, ToySpec};

use nalgebra::DVector;

use crate::error::{Error, Result};

fn validate_features(features: &[DVector<f64>]) -> Result<Vec<f64>> {
    if features.is_empty() {
        return Err(Error::arg("sample must contain at least one point"));
    }
    let dim = features[0].len();
    if dim == 0 {
        return Err(Error::arg("feature vectors must have dimension ≥ 1"));
    }
    let mut norms = Vec::with_capacity(features.len());
    for (i, x) in features.iter().enumerate() {
        if x.len() != dim {
            return Err(Error::arg(format!(
                "row {i} has dimension {}, expected {dim}",
                x.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg(format!("row {i} contains a non-finite value")));
        }
        let norm = x.norm();
        if norm == 0.0 {
            return Err(Error::arg(format!("row {i} has zero norm")));
        }
        norms.push(norm);
    }
    Ok(norms)
}

/// A labeled sample: feature rows with −1/+1 labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    features: Vec<DVector<f64>>,
    labels: Vec<i8>,
    norms: Vec<f64>,
}

impl LabeledSample {
    pub fn new(features: Vec<DVector<f64>>, labels: Vec<i8>) -> Result<Self> {
        if features.len() != labels.len() {
            return Err(Error::arg(format!(
                "{} feature rows but {} labels",
                features.len(),
                labels.len()
            )));
        }
        if let Some(bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
            return Err(Error::arg(format!("labels must be −1 or +1, got {bad}")));
        }
        let norms = validate_features(&features)?;
        Ok(Self {
            features,
            labels,
            norms,
        })
    }

    pub fn features(&self) -> &[DVector<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    /// Euclidean norm of each feature row (always > 0).
    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty samples
    }

    pub fn dim(&self) -> usize {
        self.features[0].len()
    }

    /// The rows selected by `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::arg("subset must select at least one row"));
        }
        let mut features = Vec::with_capacity(indices.len());
        let mut labels = Vec::with_capacity(indices.len());
        let mut norms = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::arg(format!(
                    "index {i} out of range for sample of size {}",
                    self.len()
                )));
            }
            features.push(self.features[i].clone());
            labels.push(self.labels[i]);
            norms.push(self.norms[i]);
        }
        Ok(Self {
            features,
            labels,
            norms,
        })
    }

    /// Replace every label, keeping the feature rows (used by reverse
    /// validation to install self-predicted labels).
    pub fn with_labels(&self, labels: Vec<i8>) -> Result<Self> {
        Self::new(self.features.clone(), labels)
    }
}

/// An unlabeled sample: feature rows only.
#[derive(Debug, Clone, PartialEq)]
pub struct UnlabeledSample {
    features: Vec<DVector<f64>>,
    norms: Vec<f64>,
}

impl UnlabeledSample {
    pub fn new(features: Vec<DVector<f64>>) -> Result<Self> {
        let norms = validate_features(&features)?;
        Ok(Self { features, norms })
    }

    pub fn features(&self) -> &[DVector<f64>] {
        &self.features
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.features[0].len()
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::arg("subset must select at least one row"));
        }
        let mut features = Vec::with_capacity(indices.len());
        let mut norms = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::arg(format!(
                    "index {i} out of range for sample of size {}",
                    self.len()
                )));
            }
            features.push(self.features[i].clone());
            norms.push(self.norms[i]);
        }
        Ok(Self { features, norms })
    }
}

impl From<&LabeledSample> for UnlabeledSample {
    /// Drop the labels (e.g. to treat an evaluation sample as adaptation
    /// input).
    fn from(s: &LabeledSample) -> Self {
        Self {
            features: s.features.clone(),
            norms: s.norms.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    #[test]
    fn rejects_bad_construction() {
        let x = vec![dvector![1.0, 0.0], dvector![0.0, 2.0]];
        assert!(LabeledSample::new(x.clone(), vec![1]).is_err(), "length mismatch");
        assert!(LabeledSample::new(x.clone(), vec![1, 0]).is_err(), "label 0");
        assert!(LabeledSample::new(x.clone(), vec![1, 2]).is_err(), "label 2");
        assert!(
            LabeledSample::new(vec![dvector![0.0, 0.0]], vec![1]).is_err(),
            "zero norm"
        );
        assert!(
            LabeledSample::new(vec![dvector![1.0], dvector![1.0, 2.0]], vec![1, -1]).is_err(),
            "ragged dims"
        );
        assert!(LabeledSample::new(vec![], vec![]).is_err(), "empty");
        assert!(
            LabeledSample::new(vec![dvector![f64::NAN]], vec![1]).is_err(),
            "non-finite"
        );
    }

    #[test]
    fn norms_are_precomputed() {
        let s = LabeledSample::new(
            vec![dvector![3.0, 4.0], dvector![0.0, 2.0]],
            vec![1, -1],
        )
        .unwrap();
        assert_eq!(s.norms(), &[5.0, 2.0]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn subset_keeps_order_and_checks_range() {
        let s = LabeledSample::new(
            vec![dvector![1.0], dvector![2.0], dvector![3.0]],
            vec![1, -1, 1],
        )
        .unwrap();
        let sub = s.subset(&[2, 0]).unwrap();
        assert_eq!(sub.labels(), &[1, 1]);
        assert_eq!(sub.features()[0][0], 3.0);
        assert!(s.subset(&[3]).is_err());
        assert!(s.subset(&[]).is_err());
    }
}
