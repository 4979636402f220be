//! Hyperparameter selection: k-fold cross-validation, the reverse
//! (circular) validation protocol for unsupervised adaptation, and grid
//! search over trade-off pairs.
//!
//! Plain cross-validation scores a tuple by held-out source error, which is
//! the right tool when labeled data comes from the deployment domain.  When
//! only unlabeled target rows exist, reverse validation stands in: fit a
//! forward model, let it label the target rows it trained on, fit a
//! *reverse* model from those self-labeled rows back toward the source, and
//! score that reverse model on held-out labeled source data.  A tuple that
//! adapts well carries labels to the target and back without shredding
//! them; a tuple that collapses (or memorizes the source) does not survive
//! the round trip.
//!
//! No true target label is consulted anywhere: targets enter every function
//! here as [`UnlabeledSample`], so the compiler enforces the protocol.  All
//! three entry points are deterministic in their seed; folds and grid
//! points fan out over the rayon pool but results merge in a fixed order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::fmt_float;
use crate::data::{kfold_split, LabeledSample, UnlabeledSample};
use crate::error::{Error, Result};
use crate::training::{
    train, zero_one_error, Algorithm, HyperParams, ModelForm, OptimizerSettings,
};

/// One hyperparameter axis of a search grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    name: String,
    min: f64,
    max: f64,
    points: usize,
    log_scale: bool,
}

impl GridAxis {
    /// A linearly spaced axis.
    pub fn linear(name: &str, min: f64, max: f64, points: usize) -> Result<Self> {
        Self::new(name, min, max, points, false)
    }

    /// A geometrically spaced axis; needs `min > 0`.
    pub fn log(name: &str, min: f64, max: f64, points: usize) -> Result<Self> {
        Self::new(name, min, max, points, true)
    }

    fn new(name: &str, min: f64, max: f64, points: usize, log_scale: bool) -> Result<Self> {
        if name.is_empty() {
            return Err(Error::arg("grid axis needs a hyperparameter name"));
        }
        if !min.is_finite() || !max.is_finite() || min >= max {
            return Err(Error::arg(format!(
                "axis `{name}` needs finite bounds with min < max, got [{min}, {max}]"
            )));
        }
        if points < 2 {
            return Err(Error::arg(format!(
                "axis `{name}` needs at least 2 points, got {points}"
            )));
        }
        if log_scale && min <= 0.0 {
            return Err(Error::arg(format!(
                "log-scale axis `{name}` needs min > 0, got {min}"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            min,
            max,
            points,
            log_scale,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// The axis values, smallest first.  Both endpoints are the exact `min`
    /// and `max` handed to the constructor; interior points are evenly
    /// spaced in value (or in log-value for geometric axes).
    pub fn values(&self) -> Vec<f64> {
        let steps = (self.points - 1) as f64;
        let mut values: Vec<f64> = (0..self.points)
            .map(|i| {
                let t = i as f64 / steps;
                if self.log_scale {
                    (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp()
                } else {
                    self.min + t * (self.max - self.min)
                }
            })
            .collect();
        // pin the endpoints so no rounding creeps into the documented range
        values[0] = self.min;
        values[self.points - 1] = self.max;
        values
    }
}

/// A two-axis hyperparameter grid; axis 1 varies slowest in row-major
/// enumerations.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    axis1: GridAxis,
    axis2: GridAxis,
}

impl GridSpec {
    pub fn new(axis1: GridAxis, axis2: GridAxis) -> Result<Self> {
        if axis1.name == axis2.name {
            return Err(Error::arg(format!(
                "grid axes must name distinct hyperparameters, both are `{}`",
                axis1.name
            )));
        }
        Ok(Self { axis1, axis2 })
    }

    /// The standard 20×20 logarithmic grid for an adaptation learner: the
    /// loss trade-off (Omega or C) over [1e-2, 1e6] and the domain trade-off
    /// (A or B) over [1.0, 1e8].
    pub fn standard(algorithm: Algorithm) -> Result<Self> {
        let (loss_axis, domain_axis) = match algorithm {
            Algorithm::Pbgd3 => {
                return Err(Error::arg(
                    "pbgd3 has a single trade-off; sweep Omega with cross_validate instead",
                ))
            }
            Algorithm::Pbda => ("Omega", "A"),
            Algorithm::Dalc => ("C", "B"),
        };
        Self::new(
            GridAxis::log(loss_axis, 1e-2, 1e6, 20)?,
            GridAxis::log(domain_axis, 1.0, 1e8, 20)?,
        )
    }

    pub fn axis1(&self) -> &GridAxis {
        &self.axis1
    }

    pub fn axis2(&self) -> &GridAxis {
        &self.axis2
    }

    /// How many points a full search evaluates.
    pub fn point_count(&self) -> usize {
        self.axis1.points * self.axis2.points
    }
}

/// How grid points are scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    /// Held-out source error via [`cross_validate`].
    CrossValidation,
    /// Self-labeled round trip via [`reverse_cross_validate`].
    ReverseCrossValidation,
}

impl FromStr for Selection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cv" => Ok(Self::CrossValidation),
            "reverse-cv" | "reverse_cv" => Ok(Self::ReverseCrossValidation),
            other => Err(Error::arg(format!(
                "unknown selection `{other}` (expected cv or reverse-cv)"
            ))),
        }
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CrossValidation => "cv",
            Self::ReverseCrossValidation => "reverse-cv",
        })
    }
}

/// Mean held-out 0-1 error over a seeded k-fold split of `source`
/// (unweighted mean of the per-fold errors).
///
/// Selection here sees source data only.  The adaptation learners still
/// work: each fold trains with its own training rows as the unlabeled
/// target, which zeroes the disagreement-matching term of `pbda` and points
/// `dalc`'s disagreement term at the source marginal.
pub fn cross_validate(
    params: HyperParams,
    form: ModelForm,
    source: &LabeledSample,
    k: usize,
    seed: u64,
    settings: &OptimizerSettings,
) -> Result<f64> {
    let folds = kfold_split(source.len(), k, seed)?;
    let risks: Vec<f64> = folds
        .par_iter()
        .map(|(fit_rows, held_out_rows)| {
            let fit_on = source.subset(fit_rows)?;
            let held_out = source.subset(held_out_rows)?;
            let own_features = UnlabeledSample::new(fit_on.features().to_vec())?;
            let model = train(params, form, &fit_on, Some(&own_features), settings)?;
            let predictions = model.predict_all(held_out.features())?;
            zero_one_error(&predictions, held_out.labels())
        })
        .collect::<Result<_>>()?;
    Ok(risks.iter().sum::<f64>() / risks.len() as f64)
}

/// Outcome of [`reverse_cross_validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReverseValidation {
    /// Unweighted mean of `fold_risks`.
    pub mean_risk: f64,
    /// Reverse-model error on each held-out source fold, in fold order.
    pub fold_risks: Vec<f64>,
    /// One note per fold whose self-labeled target collapsed to a single
    /// class; such folds are still scored.
    pub warnings: Vec<String>,
}

/// Score a hyperparameter tuple without touching a single target label.
///
/// `source` and `target` are split independently (seeds `seed` and
/// `seed + 1`) and paired by fold index.  Per fold: fit a forward model on
/// the training rows of both samples, self-label those target rows with it,
/// fit a reverse model treating the self-labeled rows as its source and the
/// source training rows (stripped of labels) as its target, then report the
/// reverse model's 0-1 error on the held-out source rows.
///
/// Both samples need at least `k` rows.  The reverse fit reuses the same
/// algorithm, tuple, form and optimizer budget as the forward fit.
pub fn reverse_cross_validate(
    params: HyperParams,
    form: ModelForm,
    source: &LabeledSample,
    target: &UnlabeledSample,
    k: usize,
    seed: u64,
    settings: &OptimizerSettings,
) -> Result<ReverseValidation> {
    let source_folds = kfold_split(source.len(), k, seed)?;
    let target_folds = kfold_split(target.len(), k, seed.wrapping_add(1))?;
    let per_fold: Vec<(f64, Option<String>)> = source_folds
        .par_iter()
        .zip(target_folds.par_iter())
        .enumerate()
        .map(|(fold, ((s_fit_rows, s_held_rows), (t_fit_rows, _)))| {
            let s_fit = source.subset(s_fit_rows)?;
            let s_held = source.subset(s_held_rows)?;
            let t_fit = target.subset(t_fit_rows)?;

            let forward = train(params, form, &s_fit, Some(&t_fit), settings)?;
            let self_labels = forward.predict_all(t_fit.features())?;
            let warning = single_class(&self_labels).map(|label| {
                format!("fold {fold}: self-labeled target collapsed to class {label:+}")
            });

            let pseudo_source = LabeledSample::new(t_fit.features().to_vec(), self_labels)?;
            let back_target = UnlabeledSample::new(s_fit.features().to_vec())?;
            let reverse = train(params, form, &pseudo_source, Some(&back_target), settings)?;

            let predictions = reverse.predict_all(s_held.features())?;
            Ok((zero_one_error(&predictions, s_held.labels())?, warning))
        })
        .collect::<Result<_>>()?;

    let mut fold_risks = Vec::with_capacity(per_fold.len());
    let mut warnings = Vec::new();
    for (risk, warning) in per_fold {
        fold_risks.push(risk);
        warnings.extend(warning);
    }
    Ok(ReverseValidation {
        mean_risk: fold_risks.iter().sum::<f64>() / fold_risks.len() as f64,
        fold_risks,
        warnings,
    })
}

/// `Some(label)` when every entry equals it.
fn single_class(labels: &[i8]) -> Option<i8> {
    let first = *labels.first()?;
    labels.iter().all(|&l| l == first).then_some(first)
}

/// Protocol knobs shared by every point of a grid search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSettings {
    pub selection: Selection,
    /// Fold count handed to the underlying validator.
    pub folds: usize,
    pub seed: u64,
}

/// A scored grid point: `param1` comes from axis 1, `param2` from axis 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridScore {
    pub param1: f64,
    pub param2: f64,
    pub score: f64,
}

/// Result of [`grid_search`]: the winning tuple plus the full table.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSearch {
    pub best: HyperParams,
    pub best_score: f64,
    /// Every grid point in row-major order (axis 1 slowest), regardless of
    /// which worker finished first.
    pub table: Vec<GridScore>,
    /// Degeneracy notes from reverse validation, prefixed with the grid
    /// point they belong to.  Empty under plain cross-validation.
    pub warnings: Vec<String>,
}

impl GridSearch {
    /// The score table as CSV with a `param1,param2,score` header.  Floats
    /// carry 17 significant digits, so the table re-parses exactly.
    pub fn table_csv(&self) -> String {
        let mut out = String::from("param1,param2,score\n");
        for row in &self.table {
            out.push_str(&fmt_float(row.param1));
            out.push(',');
            out.push_str(&fmt_float(row.param2));
            out.push(',');
            out.push_str(&fmt_float(row.score));
            out.push('\n');
        }
        out
    }
}

/// Exhaustively score every point of `grid` and return the argmin.
///
/// Ties break toward the earliest row-major point, i.e. the
/// lexicographically smallest `(param1, param2)` tuple.  Reverse selection
/// needs `target`; plain cross-validation ignores it.  Grid axes must name
/// the algorithm's two trade-offs (in either order), so `pbgd3` — which has
/// only one — is rejected.
pub fn grid_search(
    algorithm: Algorithm,
    form: ModelForm,
    source: &LabeledSample,
    target: Option<&UnlabeledSample>,
    grid: &GridSpec,
    search: SearchSettings,
    settings: &OptimizerSettings,
) -> Result<GridSearch> {
    // surface an unusable grid before any training starts
    params_from_point(algorithm, grid, grid.axis1.min, grid.axis2.min)?;

    let (best_row, table, warnings) = match search.selection {
        Selection::CrossValidation => search_with(grid, |v1, v2| {
            let params = params_from_point(algorithm, grid, v1, v2)?;
            let risk = cross_validate(params, form, source, search.folds, search.seed, settings)?;
            Ok((risk, Vec::new()))
        })?,
        Selection::ReverseCrossValidation => {
            let Some(target) = target else {
                return Err(Error::arg("reverse-cv selection needs a target sample"));
            };
            search_with(grid, |v1, v2| {
                let params = params_from_point(algorithm, grid, v1, v2)?;
                let outcome = reverse_cross_validate(
                    params,
                    form,
                    source,
                    target,
                    search.folds,
                    search.seed,
                    settings,
                )?;
                let here = format!("{}={v1}, {}={v2}", grid.axis1.name, grid.axis2.name);
                let warnings = outcome
                    .warnings
                    .into_iter()
                    .map(|w| format!("{here}: {w}"))
                    .collect();
                Ok((outcome.mean_risk, warnings))
            })?
        }
    };

    Ok(GridSearch {
        best: params_from_point(algorithm, grid, best_row.param1, best_row.param2)?,
        best_score: best_row.score,
        table,
        warnings,
    })
}

/// Run `scorer` over the grid in parallel and fold the results back in
/// row-major order.
fn search_with<F>(grid: &GridSpec, scorer: F) -> Result<(GridScore, Vec<GridScore>, Vec<String>)>
where
    F: Fn(f64, f64) -> Result<(f64, Vec<String>)> + Sync,
{
    let values1 = grid.axis1.values();
    let values2 = grid.axis2.values();
    let points: Vec<(f64, f64)> = values1
        .iter()
        .flat_map(|&v1| values2.iter().map(move |&v2| (v1, v2)))
        .collect();
    let scored: Vec<(f64, Vec<String>)> = points
        .par_iter()
        .map(|&(v1, v2)| scorer(v1, v2))
        .collect::<Result<_>>()?;

    let mut table = Vec::with_capacity(points.len());
    let mut warnings = Vec::new();
    for ((param1, param2), (score, mut point_warnings)) in points.into_iter().zip(scored) {
        table.push(GridScore {
            param1,
            param2,
            score,
        });
        warnings.append(&mut point_warnings);
    }
    // strict `<` keeps the earliest minimizer of the row-major scan, which
    // is exactly the lexicographically smallest tuple among the ties
    let best = table
        .iter()
        .copied()
        .reduce(|best, row| if row.score < best.score { row } else { best })
        .expect("a valid grid has at least four points");
    Ok((best, table, warnings))
}

/// Map a grid point onto the algorithm's named trade-offs, matching axis
/// names in either order.
fn params_from_point(
    algorithm: Algorithm,
    grid: &GridSpec,
    v1: f64,
    v2: f64,
) -> Result<HyperParams> {
    let lookup = |wanted: &str| -> Result<f64> {
        if grid.axis1.name == wanted {
            Ok(v1)
        } else if grid.axis2.name == wanted {
            Ok(v2)
        } else {
            Err(Error::arg(format!(
                "{algorithm} needs an axis named `{wanted}`, the grid has `{}` and `{}`",
                grid.axis1.name, grid.axis2.name
            )))
        }
    };
    match algorithm {
        Algorithm::Pbgd3 => Err(Error::arg(
            "pbgd3 has a single trade-off; sweep Omega with cross_validate instead",
        )),
        Algorithm::Pbda => Ok(HyperParams::pbda(lookup("Omega")?, lookup("A")?)),
        Algorithm::Dalc => Ok(HyperParams::dalc(lookup("B")?, lookup("C")?)),
    }
}
