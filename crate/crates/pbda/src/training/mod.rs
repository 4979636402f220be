//! Model fitting: the three linear-classifier learners, their shared
//! quasi-Newton minimizer, trained-model prediction, and the text model
//! format.
//!
//! * `pbgd3` — single-domain learning of Ω·ΣΦ(yᵢmᵢ) + ½‖w‖², fitted in two
//!   stages: the convex surrogate Φ̃ from the zero vector, then the plain
//!   objective warm-started from the convex solution;
//! * `pbda` — margin-distribution adaptation Ω·ΣΦ̃(yᵢmᵢˢ) +
//!   A·|Σ[Φ_d(mᵢˢ) − Φ_d(mᵢᵗ)]| + ½‖w‖², warm-started (primal) from the
//!   convexified single-domain solution;
//! * `dalc` — disagreement/joint-error adaptation C·Σ_TΦ_d + B·Σ_SΦ_e +
//!   ‖w‖², started from the uniform vector wᵢ = 1/d.
//!
//! Every learner exists in a primal form (an explicit weight vector) and a
//! dual form (coefficients over a kernel Gram matrix; the adaptation
//! learners use the joint source-then-target Gram and start from
//! αᵢ = yᵢ/M on source rows, 1/M on target rows).  Ties at the decision
//! boundary break upward: sign(0) = +1.

mod model_io;
mod objectives;
mod optimizer;

pub use model_io::{load_model, model_from_str, model_to_string, save_model};
pub use objectives::{
    objective_dalc_dual, objective_dalc_primal, objective_pbda_dual, objective_pbda_primal,
    objective_pbgd3_dual, objective_pbgd3_primal,
};
pub use optimizer::{minimize, Minimum, OptimizerSettings};

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use crate::data::{LabeledSample, UnlabeledSample};
use crate::error::{Error, Result};
use crate::kernels::{gram, joint_gram, KernelKind};

use objectives::{DalcDual, DalcPrimal, PbdaDual, PbdaPrimal, Pbgd3Dual, Pbgd3Primal};

/// The three learners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Pbgd3,
    Pbda,
    Dalc,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pbgd3" => Ok(Self::Pbgd3),
            "pbda" => Ok(Self::Pbda),
            "dalc" => Ok(Self::Dalc),
            other => Err(Error::arg(format!(
                "unknown algorithm `{other}` (expected pbgd3, pbda or dalc)"
            ))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pbgd3 => "pbgd3",
            Self::Pbda => "pbda",
            Self::Dalc => "dalc",
        })
    }
}

/// Algorithm selection together with its trade-off constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HyperParams {
    /// Ω weighs the source loss against ½‖w‖².
    Pbgd3 { omega: f64 },
    /// Ω weighs the source loss, A the disagreement-matching term;
    /// `convex` picks the surrogate Φ̃ for the source term (the default —
    /// the plain Φ sits behind `convex: false`).
    Pbda { omega: f64, a: f64, convex: bool },
    /// B weighs the source joint error, C the target disagreement.
    Dalc { b: f64, c: f64 },
}

impl HyperParams {
    pub fn pbgd3(omega: f64) -> Self {
        HyperParams::Pbgd3 { omega }
    }

    /// The standard variant with the convex source surrogate.
    pub fn pbda(omega: f64, a: f64) -> Self {
        HyperParams::Pbda {
            omega,
            a,
            convex: true,
        }
    }

    pub fn dalc(b: f64, c: f64) -> Self {
        HyperParams::Dalc { b, c }
    }

    pub fn algorithm(&self) -> Algorithm {
        match self {
            HyperParams::Pbgd3 { .. } => Algorithm::Pbgd3,
            HyperParams::Pbda { .. } => Algorithm::Pbda,
            HyperParams::Dalc { .. } => Algorithm::Dalc,
        }
    }

    /// The trade-offs as `(name, value)` pairs, in the order they appear in
    /// model files (`Omega`, then `A` for pbda; `B`, then `C` for dalc).
    pub fn named(&self) -> Vec<(String, f64)> {
        match *self {
            HyperParams::Pbgd3 { omega } => vec![("Omega".to_string(), omega)],
            HyperParams::Pbda { omega, a, .. } => {
                vec![("Omega".to_string(), omega), ("A".to_string(), a)]
            }
            HyperParams::Dalc { b, c } => vec![("B".to_string(), b), ("C".to_string(), c)],
        }
    }
}

/// Which parametrization to fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelForm {
    /// An explicit weight vector over raw features.
    Primal,
    /// Kernel coefficients over the training points.
    Dual(KernelKind),
}

/// The fitted coefficients of a [`TrainedModel`].
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    Primal {
        weights: DVector<f64>,
    },
    /// Coefficients aligned with the stored support points (all training
    /// points, source rows first for the adaptation learners).
    Dual {
        alpha: DVector<f64>,
        support: Vec<DVector<f64>>,
        kernel: KernelKind,
    },
}

/// A fitted classifier plus the record of how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub(crate) algorithm: Algorithm,
    pub(crate) representation: Representation,
    pub(crate) hyperparameters: Vec<(String, f64)>,
    pub(crate) objective_value: f64,
    pub(crate) iterations_used: usize,
}

impl TrainedModel {
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    /// Named trade-off constants, in algorithm order, plus `gamma` for RBF
    /// models.
    pub fn hyperparameters(&self) -> &[(String, f64)] {
        &self.hyperparameters
    }

    /// Final objective value reached by the minimizer.
    pub fn objective_value(&self) -> f64 {
        self.objective_value
    }

    /// Total accepted descent steps across all stages.
    pub fn iterations_used(&self) -> usize {
        self.iterations_used
    }

    /// Input dimension the model accepts.
    pub fn dim(&self) -> usize {
        match &self.representation {
            Representation::Primal { weights } => weights.len(),
            Representation::Dual { support, .. } => support[0].len(),
        }
    }

    /// ½‖w‖² in the (possibly implicit) feature space: ½αᵀKα for a dual
    /// model, which is the Kullback–Leibler divergence between the
    /// posterior centred on the model and the zero-centred prior.
    pub fn kl(&self) -> Result<f64> {
        match &self.representation {
            Representation::Primal { weights } => Ok(0.5 * weights.norm_squared()),
            Representation::Dual {
                alpha,
                support,
                kernel,
            } => {
                let k = gram(support, *kernel)?;
                Ok(0.5 * k.quad_form(alpha))
            }
        }
    }

    fn score(&self, x: &DVector<f64>) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::arg(format!(
                "point has dimension {}, the model expects {}",
                x.len(),
                self.dim()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::arg("point must be finite"));
        }
        Ok(match &self.representation {
            Representation::Primal { weights } => weights.dot(x),
            Representation::Dual {
                alpha,
                support,
                kernel,
            } => support
                .iter()
                .zip(alpha.iter())
                .map(|(s, &a)| a * kernel.eval(s, x))
                .sum(),
        })
    }

    /// Predicted label with the tie broken upward: sign(0) = +1.
    pub fn predict(&self, x: &DVector<f64>) -> Result<i8> {
        Ok(if self.score(x)? >= 0.0 { 1 } else { -1 })
    }

    pub fn predict_all(&self, features: &[DVector<f64>]) -> Result<Vec<i8>> {
        features.iter().map(|x| self.predict(x)).collect()
    }

    /// Normalized margins ⟨w,x⟩/‖x‖ (primal) or Σαⱼk(sⱼ,x)/√k(x,x) (dual)
    /// on arbitrary points, e.g. to feed a held-out sample into the risk
    /// estimators.
    pub fn normalized_margins(&self, features: &[DVector<f64>]) -> Result<Vec<f64>> {
        features
            .iter()
            .map(|x| {
                let score = self.score(x)?;
                let norm = match &self.representation {
                    Representation::Primal { .. } => x.norm(),
                    Representation::Dual { kernel, .. } => kernel.eval(x, x).sqrt(),
                };
                if !(norm > 0.0) {
                    return Err(Error::arg(
                        "cannot form a normalized margin at a zero-norm point",
                    ));
                }
                Ok(score / norm)
            })
            .collect()
    }
}

/// Fraction of predictions that differ from the labels.
pub fn zero_one_error(predictions: &[i8], labels: &[i8]) -> Result<f64> {
    if predictions.len() != labels.len() || predictions.is_empty() {
        return Err(Error::arg(format!(
            "need equally many predictions and labels (≥ 1), got {} and {}",
            predictions.len(),
            labels.len()
        )));
    }
    if predictions
        .iter()
        .chain(labels)
        .any(|&v| v != 1 && v != -1)
    {
        return Err(Error::arg("predictions and labels must be −1 or +1"));
    }
    let wrong = predictions
        .iter()
        .zip(labels)
        .filter(|&(p, y)| p != y)
        .count();
    Ok(wrong as f64 / predictions.len() as f64)
}

/// αᵢ = yᵢ/M on source rows, 1/M on target rows.
fn dual_init(labels: &[i8], size: usize) -> DVector<f64> {
    let m = size as f64;
    DVector::from_fn(size, |i, _| {
        if i < labels.len() {
            f64::from(labels[i]) / m
        } else {
            1.0 / m
        }
    })
}

fn require_target<'a>(
    target: Option<&'a UnlabeledSample>,
    algorithm: Algorithm,
) -> Result<&'a UnlabeledSample> {
    target.ok_or_else(|| {
        Error::arg(format!(
            "{algorithm} requires an unlabeled target sample"
        ))
    })
}

fn joint_support(source: &LabeledSample, target: &UnlabeledSample) -> Vec<DVector<f64>> {
    source
        .features()
        .iter()
        .chain(target.features())
        .cloned()
        .collect()
}

/// Fit a model.
///
/// `target` is required by the adaptation learners and ignored by `pbgd3`
/// (so one call site can drive all three, e.g. in cross-validation).
/// Deterministic: the same inputs produce bit-identical models.
pub fn train(
    params: HyperParams,
    form: ModelForm,
    source: &LabeledSample,
    target: Option<&UnlabeledSample>,
    settings: &OptimizerSettings,
) -> Result<TrainedModel> {
    let (representation, objective_value, iterations_used) = match params {
        HyperParams::Pbgd3 { omega } => match form {
            ModelForm::Primal => {
                let convex = Pbgd3Primal::new(source, omega, true)?;
                let plain = Pbgd3Primal::new(source, omega, false)?;
                let warm = minimize(|w| convex.eval(w), DVector::zeros(source.dim()), settings)?;
                let fit = minimize(|w| plain.eval(w), warm.point, settings)?;
                (
                    Representation::Primal { weights: fit.point },
                    fit.value,
                    warm.iterations + fit.iterations,
                )
            }
            ModelForm::Dual(kernel) => {
                let k = gram(source.features(), kernel)?;
                let convex = Pbgd3Dual::new(&k, source.labels(), omega, true)?;
                let plain = Pbgd3Dual::new(&k, source.labels(), omega, false)?;
                let warm = minimize(|a| convex.eval(a), DVector::zeros(k.size()), settings)?;
                let fit = minimize(|a| plain.eval(a), warm.point, settings)?;
                (
                    Representation::Dual {
                        alpha: fit.point,
                        support: source.features().to_vec(),
                        kernel,
                    },
                    fit.value,
                    warm.iterations + fit.iterations,
                )
            }
        },
        HyperParams::Pbda { omega, a, convex } => {
            let target = require_target(target, Algorithm::Pbda)?;
            match form {
                ModelForm::Primal => {
                    let objective = PbdaPrimal::new(source, target, omega, a, convex)?;
                    let warm_objective = Pbgd3Primal::new(source, omega, true)?;
                    let warm = minimize(
                        |w| warm_objective.eval(w),
                        DVector::zeros(source.dim()),
                        settings,
                    )?;
                    let fit = minimize(|w| objective.eval(w), warm.point, settings)?;
                    (
                        Representation::Primal { weights: fit.point },
                        fit.value,
                        warm.iterations + fit.iterations,
                    )
                }
                ModelForm::Dual(kernel) => {
                    let k = joint_gram(source.features(), target.features(), kernel)?;
                    let objective = PbdaDual::new(&k, source.labels(), omega, a, convex)?;
                    let fit = minimize(
                        |al| objective.eval(al),
                        dual_init(source.labels(), k.size()),
                        settings,
                    )?;
                    (
                        Representation::Dual {
                            alpha: fit.point,
                            support: joint_support(source, target),
                            kernel,
                        },
                        fit.value,
                        fit.iterations,
                    )
                }
            }
        }
        HyperParams::Dalc { b, c } => {
            let target = require_target(target, Algorithm::Dalc)?;
            match form {
                ModelForm::Primal => {
                    let objective = DalcPrimal::new(source, target, b, c)?;
                    let d = source.dim();
                    let init = DVector::from_element(d, 1.0 / d as f64);
                    let fit = minimize(|w| objective.eval(w), init, settings)?;
                    (
                        Representation::Primal { weights: fit.point },
                        fit.value,
                        fit.iterations,
                    )
                }
                ModelForm::Dual(kernel) => {
                    let k = joint_gram(source.features(), target.features(), kernel)?;
                    let objective = DalcDual::new(&k, source.labels(), b, c)?;
                    let fit = minimize(
                        |al| objective.eval(al),
                        dual_init(source.labels(), k.size()),
                        settings,
                    )?;
                    (
                        Representation::Dual {
                            alpha: fit.point,
                            support: joint_support(source, target),
                            kernel,
                        },
                        fit.value,
                        fit.iterations,
                    )
                }
            }
        }
    };

    let mut hyperparameters = params.named();
    if let ModelForm::Dual(KernelKind::Rbf { gamma }) = form {
        hyperparameters.push(("gamma".to_string(), gamma));
    }

    Ok(TrainedModel {
        algorithm: params.algorithm(),
        representation,
        hyperparameters,
        objective_value,
        iterations_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{gen_toy, ToyKind, ToySpec};
    use crate::estimators::{
        disagreement, domain_disagreement, gibbs_risk, joint_error, LinearPosterior,
        MarginProvider,
    };
    use nalgebra::dvector;
    use std::f64::consts::{FRAC_PI_4, PI};

    const RBF: KernelKind = KernelKind::Rbf { gamma: 1.0 };

    fn settings() -> OptimizerSettings {
        OptimizerSettings::default()
    }

    fn supervised_toy(n_per_class: usize, seed: u64) -> LabeledSample {
        gen_toy(&ToySpec {
            kind: ToyKind::GaussianSupervised,
            n_per_class,
            noise_sigma: 0.0,
            rotation_deg: 0.0,
            seed,
        })
        .unwrap()
        .0
    }

    fn da_toy(n_per_class: usize, seed: u64) -> (LabeledSample, LabeledSample) {
        gen_toy(&ToySpec {
            kind: ToyKind::GaussianDa,
            n_per_class,
            noise_sigma: 0.0,
            rotation_deg: 0.0,
            seed,
        })
        .unwrap()
    }

    fn unlabeled(s: &LabeledSample) -> UnlabeledSample {
        UnlabeledSample::new(s.features().to_vec()).unwrap()
    }

    #[test]
    fn pbgd3_primal_fits_the_supervised_toy() {
        let source = supervised_toy(50, 42);
        let model = train(
            HyperParams::pbgd3(1.0),
            ModelForm::Primal,
            &source,
            None,
            &settings(),
        )
        .unwrap();
        assert!(model.iterations_used > 0);
        // better than the zero vector's objective Ω·m·½
        assert!(model.objective_value < 0.5 * source.len() as f64);
        let err = zero_one_error(
            &model.predict_all(source.features()).unwrap(),
            source.labels(),
        )
        .unwrap();
        // the classes overlap (unit-variance Gaussians two sigma apart), so
        // the best linear rule errs around Φ(1) ≈ 0.16
        assert!(err < 0.25, "training error {err}");

        let again = train(
            HyperParams::pbgd3(1.0),
            ModelForm::Primal,
            &source,
            None,
            &settings(),
        )
        .unwrap();
        assert_eq!(model, again);
    }

    #[test]
    fn omega_zero_keeps_the_ridge_minimizer_at_zero() {
        let source = supervised_toy(10, 1);
        let model = train(
            HyperParams::pbgd3(0.0),
            ModelForm::Primal,
            &source,
            None,
            &settings(),
        )
        .unwrap();
        match model.representation() {
            Representation::Primal { weights } => {
                assert!(weights.iter().all(|&v| v == 0.0), "{weights}")
            }
            _ => unreachable!(),
        }
        assert_eq!(model.iterations_used(), 0);
    }

    #[test]
    fn pbda_with_a_zero_reduces_to_the_convexified_single_domain_fit() {
        let (source, target) = da_toy(20, 9);
        let target = unlabeled(&target);
        let model = train(
            HyperParams::pbda(1.0, 0.0),
            ModelForm::Primal,
            &source,
            Some(&target),
            &settings(),
        )
        .unwrap();
        let convex_fit = minimize(
            |w| objective_pbgd3_primal(w, &source, 1.0, true).unwrap(),
            DVector::zeros(2),
            &settings(),
        )
        .unwrap();
        match model.representation() {
            Representation::Primal { weights } => {
                assert!(
                    (weights - &convex_fit.point).amax() <= 1e-5,
                    "{weights} vs {}",
                    convex_fit.point
                );
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn dalc_with_zero_tradeoffs_shrinks_to_the_zero_vector() {
        let (source, target) = da_toy(10, 3);
        let target = unlabeled(&target);
        let model = train(
            HyperParams::dalc(0.0, 0.0),
            ModelForm::Primal,
            &source,
            Some(&target),
            &settings(),
        )
        .unwrap();
        match model.representation() {
            Representation::Primal { weights } => {
                assert!(weights.amax() <= 1e-6, "{weights}")
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn adaptation_learners_require_a_target() {
        let source = supervised_toy(5, 4);
        for params in [HyperParams::pbda(1.0, 1.0), HyperParams::dalc(1.0, 1.0)] {
            let err = train(params, ModelForm::Primal, &source, None, &settings()).unwrap_err();
            assert!(matches!(err, Error::Argument(_)), "{err}");
        }
    }

    #[test]
    fn primal_and_linear_dual_reach_the_same_objective() {
        let source = supervised_toy(25, 6);
        let primal = train(
            HyperParams::pbgd3(1.0),
            ModelForm::Primal,
            &source,
            None,
            &settings(),
        )
        .unwrap();
        let dual = train(
            HyperParams::pbgd3(1.0),
            ModelForm::Dual(KernelKind::Linear),
            &source,
            None,
            &settings(),
        )
        .unwrap();
        assert!(
            (primal.objective_value() - dual.objective_value()).abs() <= 1e-4,
            "{} vs {}",
            primal.objective_value(),
            dual.objective_value()
        );
    }

    #[test]
    fn adaptation_duals_train_on_the_rotated_moons() {
        let (source, target_labeled) = gen_toy(&ToySpec {
            kind: ToyKind::TwoMoons,
            n_per_class: 20,
            noise_sigma: 0.1,
            rotation_deg: 20.0,
            seed: 7,
        })
        .unwrap();
        let target = unlabeled(&target_labeled);

        for params in [HyperParams::pbda(1.0, 1.0), HyperParams::dalc(1.0, 1.0)] {
            let model = train(
                params,
                ModelForm::Dual(RBF),
                &source,
                Some(&target),
                &settings(),
            )
            .unwrap();
            assert!(model.iterations_used() > 0);
            assert!(model.objective_value().is_finite());
            let predictions = model.predict_all(target_labeled.features()).unwrap();
            let err = zero_one_error(&predictions, target_labeled.labels()).unwrap();
            // a weak sanity floor; the acceptance experiment pins the
            // stronger comparison against the unadapted baseline
            assert!(err <= 0.5, "{:?} target error {err}", params.algorithm());
        }
    }

    #[test]
    fn trained_models_round_trip_through_the_text_format() {
        let (source, target_labeled) = da_toy(10, 11);
        let target = unlabeled(&target_labeled);
        let model = train(
            HyperParams::dalc(1.0, 2.0),
            ModelForm::Dual(RBF),
            &source,
            Some(&target),
            &settings(),
        )
        .unwrap();

        let text = model_to_string(&model);
        assert!(text.starts_with("PBDA-MODEL v1 dalc dual rbf\n"), "{text}");
        let back = model_from_str(&text).unwrap();
        assert_eq!(model, back);
        assert_eq!(
            model.predict_all(target_labeled.features()).unwrap(),
            back.predict_all(target_labeled.features()).unwrap()
        );

        let names: Vec<&str> = model
            .hyperparameters()
            .iter()
            .map(|(n, _)| n.as_str())
            .collect();
        assert_eq!(names, ["B", "C", "gamma"]);
    }

    #[test]
    fn predict_breaks_sign_ties_upward() {
        let model = TrainedModel {
            algorithm: Algorithm::Pbgd3,
            representation: Representation::Primal {
                weights: dvector![1.0, 0.0],
            },
            hyperparameters: vec![("Omega".to_string(), 1.0)],
            objective_value: 0.0,
            iterations_used: 0,
        };
        // ⟨w,x⟩ = 0 exactly
        assert_eq!(model.predict(&dvector![0.0, 3.0]).unwrap(), 1);
        assert_eq!(model.predict(&dvector![-2.0, 0.0]).unwrap(), -1);
        assert_eq!(model.predict(&dvector![2.0, -5.0]).unwrap(), 1);
        assert!(model.predict(&dvector![1.0]).is_err());
        assert!(model.predict(&dvector![f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn dual_kl_matches_the_expanded_primal_norm() {
        let source = supervised_toy(10, 13);
        let dual = train(
            HyperParams::pbgd3(1.0),
            ModelForm::Dual(KernelKind::Linear),
            &source,
            None,
            &settings(),
        )
        .unwrap();
        let Representation::Dual { alpha, support, .. } = dual.representation() else {
            unreachable!()
        };
        let w: DVector<f64> = support
            .iter()
            .zip(alpha.iter())
            .map(|(x, &a)| x * a)
            .sum();
        assert!((dual.kl().unwrap() - 0.5 * w.norm_squared()).abs() <= 1e-10);
    }

    #[test]
    fn normalized_margins_agree_between_model_and_estimator_paths() {
        let source = supervised_toy(10, 14);
        let model = train(
            HyperParams::pbgd3(1.0),
            ModelForm::Primal,
            &source,
            None,
            &settings(),
        )
        .unwrap();
        let Representation::Primal { weights } = model.representation() else {
            unreachable!()
        };
        let margins = model.normalized_margins(source.features()).unwrap();
        for (x, (n, m)) in source
            .features()
            .iter()
            .zip(source.norms().iter().zip(&margins))
        {
            assert!((weights.dot(x) / n - m).abs() <= 1e-15);
        }
        assert!(model
            .normalized_margins(&[dvector![0.0, 0.0]])
            .is_err());
    }

    #[test]
    fn zero_one_error_counts_mismatches() {
        assert_eq!(
            zero_one_error(&[1, -1, 1, 1], &[1, 1, 1, -1]).unwrap(),
            0.5
        );
        assert!(zero_one_error(&[1], &[1, -1]).is_err());
        assert!(zero_one_error(&[0], &[1]).is_err());
        assert!(zero_one_error(&[], &[]).is_err());
    }

    // ---- sweep invariants over the angle-parametrized weight family ----

    fn theta_grid() -> Vec<f64> {
        (0..720).map(|k| -PI + 2.0 * PI * k as f64 / 720.0).collect()
    }

    fn bayes_risk(w: &DVector<f64>, s: &LabeledSample) -> f64 {
        let wrong = s
            .features()
            .iter()
            .zip(s.labels())
            .filter(|&(x, &y)| {
                let predicted: i8 = if w.dot(x) >= 0.0 { 1 } else { -1 };
                predicted != y
            })
            .count();
        wrong as f64 / s.len() as f64
    }

    #[test]
    fn gibbs_bayes_sup_gap_shrinks_as_the_posterior_sharpens() {
        // sup over directions of |Gibbs − Bayes| must fall strictly as the
        // weight norm grows: a longer w concentrates the vote
        let source = supervised_toy(100, 42);
        let mut sups = Vec::new();
        for radius in [1.0, 2.0, 5.0] {
            let mut sup: f64 = 0.0;
            for theta in theta_grid() {
                let w = dvector![radius * theta.cos(), radius * theta.sin()];
                let posterior = LinearPosterior::new(w.clone()).unwrap();
                let gibbs =
                    gibbs_risk(MarginProvider::primal(&posterior), &source).unwrap();
                sup = sup.max((gibbs - bayes_risk(&w, &source)).abs());
            }
            sups.push(sup);
        }
        assert!(
            sups[0] > sups[1] && sups[1] > sups[2],
            "sup gaps {sups:?} not strictly decreasing"
        );
    }

    /// Distance between two hyperplane angles: folding mod π identifies w
    /// and −w, which induce the same decision boundary family.
    fn line_angle_dist(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(PI);
        d.min(PI - d)
    }

    #[test]
    fn dalc_surrogate_argmin_lands_nearer_the_adapted_separator() {
        // on the shifted-Gaussian pair the good target separator is the
        // diagonal (angle π/4); the dalc surrogate's best angle must sit
        // closer to it than the margin-matching surrogate's best angle
        let (source, target_labeled) = da_toy(100, 7);
        let source_unlabeled = unlabeled(&source);
        let target = unlabeled(&target_labeled);
        let mut best_dalc = (f64::INFINITY, 0.0);
        let mut best_pbda = (f64::INFINITY, 0.0);
        for theta in theta_grid() {
            let w = dvector![2.0 * theta.cos(), 2.0 * theta.sin()];
            let posterior = LinearPosterior::new(w).unwrap();
            let p = MarginProvider::primal(&posterior);
            let d_t = disagreement(p, &target).unwrap();
            let e_s = joint_error(p, &source).unwrap();
            let g_s = gibbs_risk(p, &source).unwrap();
            let dis = domain_disagreement(p, &source_unlabeled, &target).unwrap();
            if d_t + e_s < best_dalc.0 {
                best_dalc = (d_t + e_s, theta);
            }
            if g_s + dis < best_pbda.0 {
                best_pbda = (g_s + dis, theta);
            }
        }
        let dalc_dist = line_angle_dist(best_dalc.1, FRAC_PI_4);
        let pbda_dist = line_angle_dist(best_pbda.1, FRAC_PI_4);
        assert!(
            dalc_dist < pbda_dist,
            "dalc argmin {} (dist {dalc_dist}) vs pbda argmin {} (dist {pbda_dist})",
            best_dalc.1,
            best_pbda.1
        );
    }
}
