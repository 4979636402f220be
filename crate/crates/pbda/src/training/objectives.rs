//! The six training objectives — three algorithms × {primal, dual} — each
//! evaluated together with its exact gradient.
//!
//! All losses act on normalized margins.  Primal form: margins are
//! ⟨w,x⟩/‖x‖, the regularizer is a squared norm of w.  Dual form: margins
//! are (Kα)ᵢ/√Kᵢᵢ over a Gram matrix (the joint source-then-target Gram for
//! the adaptation objectives) and the regularizer is the quadratic form
//! αᵀKα, so a linear-kernel dual evaluates to exactly the primal objective
//! at w = Σαⱼxⱼ.
//!
//! * single-domain (`pbgd3`): Ω·ΣΦ(yᵢmᵢ) + ½‖w‖², with the convex
//!   surrogate Φ̃ in place of Φ behind a flag;
//! * margin-distribution adaptation (`pbda`): Ω·ΣΦ̃(yᵢmᵢˢ) +
//!   A·|Σ[Φ_d(mᵢˢ) − Φ_d(mᵢᵗ)]| + ½‖w‖², paired sums, so it requires
//!   equally sized source and target samples; the kink of |·| uses the
//!   subgradient 0 exactly at zero gap;
//! * disagreement/joint-error adaptation (`dalc`): C·Σ_TΦ_d(mᵢᵗ) +
//!   B·Σ_SΦ_e(yᵢmᵢˢ) + ‖w‖² — note the *unhalved* regularizer, whose
//!   gradient contribution is 2w (dual: 2Kα).

use nalgebra::{DMatrix, DVector};

use crate::data::{LabeledSample, UnlabeledSample};
use crate::error::{Error, Result};
use crate::kernels::GramMatrix;
use crate::losses::{convex_probit_raw, disagreement_raw, joint_error_raw, probit_raw, LossEval};

type Loss = fn(f64) -> LossEval;

fn source_loss(convex: bool) -> Loss {
    if convex {
        convex_probit_raw
    } else {
        probit_raw
    }
}

/// Feature rows scaled to unit Euclidean norm, stacked one row per point, so
/// that all margins of a weight vector come from a single mat-vec.
fn unit_rows(features: &[DVector<f64>], norms: &[f64]) -> DMatrix<f64> {
    DMatrix::from_fn(features.len(), features[0].len(), |i, j| {
        features[i][j] / norms[i]
    })
}

fn signed_labels(labels: &[i8]) -> Vec<f64> {
    labels.iter().map(|&y| f64::from(y)).collect()
}

/// d|gap|/dgap with the subgradient choice 0 at the kink itself.
fn gap_sign(gap: f64) -> f64 {
    if gap > 0.0 {
        1.0
    } else if gap < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn check_tradeoff(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::arg(format!(
            "{name} must be a finite value ≥ 0, got {v}"
        )))
    }
}

fn check_point(name: &str, v: &DVector<f64>, expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::arg(format!(
            "{name} has length {}, expected {expected}",
            v.len()
        )));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::arg(format!("{name} must be finite")));
    }
    Ok(())
}

fn check_raw_labels(labels: &[i8]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::arg("need at least one labeled point"));
    }
    if labels.iter().any(|&y| y != 1 && y != -1) {
        return Err(Error::arg("labels must be −1 or +1"));
    }
    Ok(())
}

fn check_same_dim(source: &LabeledSample, target: &UnlabeledSample) -> Result<()> {
    if source.dim() != target.dim() {
        return Err(Error::arg(format!(
            "source dimension {} != target dimension {}",
            source.dim(),
            target.dim()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// single-domain objective
// ---------------------------------------------------------------------------

pub(crate) struct Pbgd3Primal {
    xhat: DMatrix<f64>,
    y: Vec<f64>,
    omega: f64,
    loss: Loss,
}

impl Pbgd3Primal {
    pub(crate) fn new(source: &LabeledSample, omega: f64, convex: bool) -> Result<Self> {
        check_tradeoff("Omega", omega)?;
        Ok(Pbgd3Primal {
            xhat: unit_rows(source.features(), source.norms()),
            y: signed_labels(source.labels()),
            omega,
            loss: source_loss(convex),
        })
    }

    pub(crate) fn eval(&self, w: &DVector<f64>) -> (f64, DVector<f64>) {
        let margins = &self.xhat * w;
        let mut value = 0.5 * w.norm_squared();
        let mut coef = DVector::zeros(margins.len());
        for i in 0..margins.len() {
            let e = (self.loss)(self.y[i] * margins[i]);
            value += self.omega * e.value;
            coef[i] = self.omega * self.y[i] * e.derivative;
        }
        (value, self.xhat.tr_mul(&coef) + w)
    }
}

pub(crate) struct Pbgd3Dual<'a> {
    gram: &'a GramMatrix,
    y: Vec<f64>,
    omega: f64,
    loss: Loss,
}

impl<'a> Pbgd3Dual<'a> {
    pub(crate) fn new(
        gram: &'a GramMatrix,
        labels: &[i8],
        omega: f64,
        convex: bool,
    ) -> Result<Self> {
        check_tradeoff("Omega", omega)?;
        check_raw_labels(labels)?;
        if labels.len() != gram.size() {
            return Err(Error::arg(format!(
                "label count {} != Gram size {}",
                labels.len(),
                gram.size()
            )));
        }
        Ok(Pbgd3Dual {
            gram,
            y: signed_labels(labels),
            omega,
            loss: source_loss(convex),
        })
    }

    pub(crate) fn eval(&self, alpha: &DVector<f64>) -> (f64, DVector<f64>) {
        let ka = self.gram.mat_vec(alpha);
        let rn = self.gram.row_norms();
        let mut value = 0.5 * alpha.dot(&ka);
        // the regularizer contributes Kα to the gradient, folded into one
        // final mat-vec: ∇ = K(α + c)
        let mut coef = alpha.clone();
        for i in 0..self.y.len() {
            let e = (self.loss)(self.y[i] * ka[i] / rn[i]);
            value += self.omega * e.value;
            coef[i] += self.omega * self.y[i] * e.derivative / rn[i];
        }
        (value, self.gram.mat_vec(&coef))
    }
}

// ---------------------------------------------------------------------------
// margin-distribution adaptation objective
// ---------------------------------------------------------------------------

pub(crate) struct PbdaPrimal {
    xs: DMatrix<f64>,
    y: Vec<f64>,
    xt: DMatrix<f64>,
    omega: f64,
    a: f64,
    loss: Loss,
}

impl PbdaPrimal {
    pub(crate) fn new(
        source: &LabeledSample,
        target: &UnlabeledSample,
        omega: f64,
        a: f64,
        convex: bool,
    ) -> Result<Self> {
        check_tradeoff("Omega", omega)?;
        check_tradeoff("A", a)?;
        check_same_dim(source, target)?;
        if source.len() != target.len() {
            return Err(Error::arg(format!(
                "the paired source/target sums require equally sized samples, \
                 got {} source and {} target points",
                source.len(),
                target.len()
            )));
        }
        Ok(PbdaPrimal {
            xs: unit_rows(source.features(), source.norms()),
            y: signed_labels(source.labels()),
            xt: unit_rows(target.features(), target.norms()),
            omega,
            a,
            loss: source_loss(convex),
        })
    }

    pub(crate) fn eval(&self, w: &DVector<f64>) -> (f64, DVector<f64>) {
        let ms = &self.xs * w;
        let mt = &self.xt * w;
        let m = ms.len();
        let mut value = 0.5 * w.norm_squared();
        let mut cs = DVector::zeros(m);
        let mut ct = DVector::zeros(m);
        // the disagreement derivatives are stashed unscaled until the gap's
        // sign is known
        let mut ds = vec![0.0; m];
        let mut dt = vec![0.0; m];
        let mut gap = 0.0;
        for i in 0..m {
            let e = (self.loss)(self.y[i] * ms[i]);
            value += self.omega * e.value;
            cs[i] = self.omega * self.y[i] * e.derivative;
            let es = disagreement_raw(ms[i]);
            let et = disagreement_raw(mt[i]);
            gap += es.value - et.value;
            ds[i] = es.derivative;
            dt[i] = et.derivative;
        }
        value += self.a * gap.abs();
        let s = self.a * gap_sign(gap);
        for i in 0..m {
            cs[i] += s * ds[i];
            ct[i] = -s * dt[i];
        }
        (value, self.xs.tr_mul(&cs) + self.xt.tr_mul(&ct) + w)
    }
}

pub(crate) struct PbdaDual<'a> {
    gram: &'a GramMatrix,
    y: Vec<f64>,
    omega: f64,
    a: f64,
    loss: Loss,
}

impl<'a> PbdaDual<'a> {
    pub(crate) fn new(
        gram: &'a GramMatrix,
        source_labels: &[i8],
        omega: f64,
        a: f64,
        convex: bool,
    ) -> Result<Self> {
        check_tradeoff("Omega", omega)?;
        check_tradeoff("A", a)?;
        check_raw_labels(source_labels)?;
        if 2 * source_labels.len() != gram.size() {
            return Err(Error::arg(format!(
                "the paired source/target sums require a joint Gram of size \
                 2·{}, got {}",
                source_labels.len(),
                gram.size()
            )));
        }
        Ok(PbdaDual {
            gram,
            y: signed_labels(source_labels),
            omega,
            a,
            loss: source_loss(convex),
        })
    }

    pub(crate) fn eval(&self, alpha: &DVector<f64>) -> (f64, DVector<f64>) {
        let m_s = self.y.len();
        let ka = self.gram.mat_vec(alpha);
        let rn = self.gram.row_norms();
        let mut value = 0.5 * alpha.dot(&ka);
        let mut coef = alpha.clone();
        let mut dis_deriv = vec![0.0; 2 * m_s];
        let mut gap = 0.0;
        for i in 0..m_s {
            let margin = ka[i] / rn[i];
            let e = (self.loss)(self.y[i] * margin);
            value += self.omega * e.value;
            coef[i] += self.omega * self.y[i] * e.derivative / rn[i];
            let d = disagreement_raw(margin);
            gap += d.value;
            dis_deriv[i] = d.derivative;
        }
        for i in m_s..2 * m_s {
            let d = disagreement_raw(ka[i] / rn[i]);
            gap -= d.value;
            dis_deriv[i] = d.derivative;
        }
        value += self.a * gap.abs();
        let s = self.a * gap_sign(gap);
        for (i, deriv) in dis_deriv.iter().enumerate() {
            let side = if i < m_s { 1.0 } else { -1.0 };
            coef[i] += s * side * deriv / rn[i];
        }
        (value, self.gram.mat_vec(&coef))
    }
}

// ---------------------------------------------------------------------------
// disagreement/joint-error adaptation objective
// ---------------------------------------------------------------------------

pub(crate) struct DalcPrimal {
    xs: DMatrix<f64>,
    y: Vec<f64>,
    xt: DMatrix<f64>,
    b: f64,
    c: f64,
}

impl DalcPrimal {
    pub(crate) fn new(
        source: &LabeledSample,
        target: &UnlabeledSample,
        b: f64,
        c: f64,
    ) -> Result<Self> {
        check_tradeoff("B", b)?;
        check_tradeoff("C", c)?;
        check_same_dim(source, target)?;
        Ok(DalcPrimal {
            xs: unit_rows(source.features(), source.norms()),
            y: signed_labels(source.labels()),
            xt: unit_rows(target.features(), target.norms()),
            b,
            c,
        })
    }

    pub(crate) fn eval(&self, w: &DVector<f64>) -> (f64, DVector<f64>) {
        let ms = &self.xs * w;
        let mt = &self.xt * w;
        let mut value = w.norm_squared();
        let mut cs = DVector::zeros(ms.len());
        let mut ct = DVector::zeros(mt.len());
        for i in 0..ms.len() {
            let e = joint_error_raw(self.y[i] * ms[i]);
            value += self.b * e.value;
            cs[i] = self.b * self.y[i] * e.derivative;
        }
        for i in 0..mt.len() {
            let e = disagreement_raw(mt[i]);
            value += self.c * e.value;
            ct[i] = self.c * e.derivative;
        }
        (
            value,
            self.xs.tr_mul(&cs) + self.xt.tr_mul(&ct) + 2.0 * w,
        )
    }
}

pub(crate) struct DalcDual<'a> {
    gram: &'a GramMatrix,
    y: Vec<f64>,
    b: f64,
    c: f64,
}

impl<'a> DalcDual<'a> {
    pub(crate) fn new(
        gram: &'a GramMatrix,
        source_labels: &[i8],
        b: f64,
        c: f64,
    ) -> Result<Self> {
        check_tradeoff("B", b)?;
        check_tradeoff("C", c)?;
        check_raw_labels(source_labels)?;
        if source_labels.len() >= gram.size() {
            return Err(Error::arg(format!(
                "joint Gram of size {} leaves no target rows after {} source rows",
                gram.size(),
                source_labels.len()
            )));
        }
        Ok(DalcDual {
            gram,
            y: signed_labels(source_labels),
            b,
            c,
        })
    }

    pub(crate) fn eval(&self, alpha: &DVector<f64>) -> (f64, DVector<f64>) {
        let m_s = self.y.len();
        let ka = self.gram.mat_vec(alpha);
        let rn = self.gram.row_norms();
        let mut value = alpha.dot(&ka); // unhalved quadratic form
        let mut coef = 2.0 * alpha;
        for i in 0..m_s {
            let e = joint_error_raw(self.y[i] * ka[i] / rn[i]);
            value += self.b * e.value;
            coef[i] += self.b * self.y[i] * e.derivative / rn[i];
        }
        for i in m_s..self.gram.size() {
            let e = disagreement_raw(ka[i] / rn[i]);
            value += self.c * e.value;
            coef[i] += self.c * e.derivative / rn[i];
        }
        (value, self.gram.mat_vec(&coef))
    }
}

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

/// Ω·ΣΦ(yᵢ⟨w,xᵢ⟩/‖xᵢ‖) + ½‖w‖² and its gradient; `convex` substitutes Φ̃.
pub fn objective_pbgd3_primal(
    w: &DVector<f64>,
    source: &LabeledSample,
    omega: f64,
    convex: bool,
) -> Result<(f64, DVector<f64>)> {
    let obj = Pbgd3Primal::new(source, omega, convex)?;
    check_point("weight vector", w, source.dim())?;
    Ok(obj.eval(w))
}

/// Dual form of [`objective_pbgd3_primal`] over a Gram matrix aligned with
/// `labels`: Ω·ΣΦ(yᵢ(Kα)ᵢ/√Kᵢᵢ) + ½αᵀKα.
pub fn objective_pbgd3_dual(
    alpha: &DVector<f64>,
    gram: &GramMatrix,
    labels: &[i8],
    omega: f64,
    convex: bool,
) -> Result<(f64, DVector<f64>)> {
    let obj = Pbgd3Dual::new(gram, labels, omega, convex)?;
    check_point("dual coefficient vector", alpha, gram.size())?;
    Ok(obj.eval(alpha))
}

/// Ω·ΣΦ̃(yᵢmᵢˢ) + A·|Σ[Φ_d(mᵢˢ) − Φ_d(mᵢᵗ)]| + ½‖w‖² and its gradient
/// (subgradient 0 at the kink); `convex = false` swaps the source term to
/// the plain Φ.
pub fn objective_pbda_primal(
    w: &DVector<f64>,
    source: &LabeledSample,
    target: &UnlabeledSample,
    omega: f64,
    a: f64,
    convex: bool,
) -> Result<(f64, DVector<f64>)> {
    let obj = PbdaPrimal::new(source, target, omega, a, convex)?;
    check_point("weight vector", w, source.dim())?;
    Ok(obj.eval(w))
}

/// Dual form of [`objective_pbda_primal`] over the joint source-then-target
/// Gram (source rows first, equally many target rows).
pub fn objective_pbda_dual(
    alpha: &DVector<f64>,
    gram: &GramMatrix,
    source_labels: &[i8],
    omega: f64,
    a: f64,
    convex: bool,
) -> Result<(f64, DVector<f64>)> {
    let obj = PbdaDual::new(gram, source_labels, omega, a, convex)?;
    check_point("dual coefficient vector", alpha, gram.size())?;
    Ok(obj.eval(alpha))
}

/// C·Σ_TΦ_d(mᵢᵗ) + B·Σ_SΦ_e(yᵢmᵢˢ) + ‖w‖² and its gradient (note the 2w
/// from the unhalved regularizer).  Source and target sizes may differ.
pub fn objective_dalc_primal(
    w: &DVector<f64>,
    source: &LabeledSample,
    target: &UnlabeledSample,
    b: f64,
    c: f64,
) -> Result<(f64, DVector<f64>)> {
    let obj = DalcPrimal::new(source, target, b, c)?;
    check_point("weight vector", w, source.dim())?;
    Ok(obj.eval(w))
}

/// Dual form of [`objective_dalc_primal`] over the joint source-then-target
/// Gram: C·Σ_TΦ_d + B·Σ_SΦ_e + αᵀKα, gradient through K(c + 2α).
pub fn objective_dalc_dual(
    alpha: &DVector<f64>,
    gram: &GramMatrix,
    source_labels: &[i8],
    b: f64,
    c: f64,
) -> Result<(f64, DVector<f64>)> {
    let obj = DalcDual::new(gram, source_labels, b, c)?;
    check_point("dual coefficient vector", alpha, gram.size())?;
    Ok(obj.eval(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{gen_toy, ToyKind, ToySpec};
    use crate::kernels::{gram, joint_gram, KernelKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const RBF: KernelKind = KernelKind::Rbf { gamma: 1.0 };

    fn toy_pair(n_per_class: usize, seed: u64) -> (LabeledSample, UnlabeledSample) {
        let (source, target) = gen_toy(&ToySpec {
            kind: ToyKind::GaussianDa,
            n_per_class,
            noise_sigma: 0.0,
            rotation_deg: 0.0,
            seed,
        })
        .unwrap();
        let target = UnlabeledSample::new(target.features().to_vec()).unwrap();
        (source, target)
    }

    fn random_vector(rng: &mut ChaCha8Rng, len: usize, half_width: f64) -> DVector<f64> {
        DVector::from_fn(len, |_, _| rng.gen_range(-half_width..half_width))
    }

    /// Central finite differences at h = 1e−6 must match the analytic
    /// gradient within 1e−5 relative to max(1, |∂f|) — the pinned contract
    /// for every objective in this module.
    fn fd_assert(f: &mut dyn FnMut(&DVector<f64>) -> f64, g: &DVector<f64>, x: &DVector<f64>) {
        const H: f64 = 1e-6;
        const TOL: f64 = 1e-5;
        for i in 0..x.len() {
            let mut xp = x.clone();
            xp[i] += H;
            let mut xm = x.clone();
            xm[i] -= H;
            let fd = (f(&xp) - f(&xm)) / (2.0 * H);
            assert!(
                (fd - g[i]).abs() <= TOL * g[i].abs().max(1.0),
                "component {i}: analytic {} vs finite-difference {fd}",
                g[i]
            );
        }
    }

    #[test]
    fn zero_weights_give_the_closed_form_values() {
        let (source, target) = toy_pair(10, 5);
        let w = DVector::zeros(2);

        // Φ(0) = ½ at every point, no regularizer
        let (v, _) = objective_pbgd3_primal(&w, &source, 1.5, false).unwrap();
        assert!((v - 1.5 * 20.0 * 0.5).abs() <= 1e-12, "{v}");

        // Φ̃(0) = ½ and both disagreement sums cancel
        let (v, _) = objective_pbda_primal(&w, &source, &target, 1.0, 7.0, true).unwrap();
        assert!((v - 10.0).abs() <= 1e-12, "{v}");

        // C·m_t·Φ_d(0) + B·m_s·Φ_e(0) = C·m_t/2 + B·m_s/4
        let (v, _) = objective_dalc_primal(&w, &source, &target, 2.0, 3.0).unwrap();
        assert!((v - (3.0 * 20.0 * 0.5 + 2.0 * 20.0 * 0.25)).abs() <= 1e-12, "{v}");
    }

    #[test]
    fn fd_pbgd3_primal() {
        let (source, _) = toy_pair(10, 11);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for convex in [false, true] {
            for _ in 0..20 {
                let w = random_vector(&mut rng, 2, 2.0);
                let (_, g) = objective_pbgd3_primal(&w, &source, 1.3, convex).unwrap();
                fd_assert(
                    &mut |w| objective_pbgd3_primal(w, &source, 1.3, convex).unwrap().0,
                    &g,
                    &w,
                );
            }
        }
    }

    #[test]
    fn fd_pbgd3_dual() {
        let (source, _) = toy_pair(10, 12);
        let k = gram(source.features(), RBF).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = random_vector(&mut rng, k.size(), 1.0);
            let (_, g) = objective_pbgd3_dual(&a, &k, source.labels(), 0.8, false).unwrap();
            fd_assert(
                &mut |a| objective_pbgd3_dual(a, &k, source.labels(), 0.8, false).unwrap().0,
                &g,
                &a,
            );
        }
    }

    #[test]
    fn fd_pbda_primal_off_the_kink() {
        let (source, target) = toy_pair(10, 13);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 20 {
            let w = random_vector(&mut rng, 2, 2.0);
            // the |gap| kink is non-differentiable: only points with a
            // clearly signed gap get the finite-difference treatment
            if pbda_primal_gap(&w, &source, &target).abs() < 1e-3 {
                continue;
            }
            let (_, g) = objective_pbda_primal(&w, &source, &target, 1.0, 2.0, true).unwrap();
            fd_assert(
                &mut |w| {
                    objective_pbda_primal(w, &source, &target, 1.0, 2.0, true)
                        .unwrap()
                        .0
                },
                &g,
                &w,
            );
            checked += 1;
        }
    }

    fn pbda_primal_gap(w: &DVector<f64>, source: &LabeledSample, target: &UnlabeledSample) -> f64 {
        let gap_of = |features: &[DVector<f64>], norms: &[f64]| -> f64 {
            features
                .iter()
                .zip(norms)
                .map(|(x, n)| disagreement_raw(w.dot(x) / n).value)
                .sum()
        };
        gap_of(source.features(), source.norms()) - gap_of(target.features(), target.norms())
    }

    #[test]
    fn fd_pbda_dual_off_the_kink() {
        let (source, target) = toy_pair(10, 14);
        let k = joint_gram(source.features(), target.features(), RBF).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut checked = 0;
        while checked < 20 {
            let a = random_vector(&mut rng, k.size(), 1.0);
            if pbda_dual_gap(&a, &k, source.len()).abs() < 1e-3 {
                continue;
            }
            let (_, g) = objective_pbda_dual(&a, &k, source.labels(), 1.0, 2.0, true).unwrap();
            fd_assert(
                &mut |a| {
                    objective_pbda_dual(a, &k, source.labels(), 1.0, 2.0, true)
                        .unwrap()
                        .0
                },
                &g,
                &a,
            );
            checked += 1;
        }
    }

    fn pbda_dual_gap(alpha: &DVector<f64>, k: &GramMatrix, m_s: usize) -> f64 {
        let margins = k.normalized_margins(alpha);
        let mut gap = 0.0;
        for i in 0..k.size() {
            let side = if i < m_s { 1.0 } else { -1.0 };
            gap += side * disagreement_raw(margins[i]).value;
        }
        gap
    }

    #[test]
    fn fd_dalc_primal() {
        let (source, target) = toy_pair(10, 15);
        // unequal sample sizes are allowed here
        let target =
            UnlabeledSample::new(target.features()[..15].to_vec()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let w = random_vector(&mut rng, 2, 2.0);
            let (_, g) = objective_dalc_primal(&w, &source, &target, 1.5, 0.7).unwrap();
            fd_assert(
                &mut |w| objective_dalc_primal(w, &source, &target, 1.5, 0.7).unwrap().0,
                &g,
                &w,
            );
        }
    }

    #[test]
    fn fd_dalc_dual() {
        let (source, target) = toy_pair(10, 16);
        let target =
            UnlabeledSample::new(target.features()[..15].to_vec()).unwrap();
        let k = joint_gram(source.features(), target.features(), RBF).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let a = random_vector(&mut rng, k.size(), 1.0);
            let (_, g) = objective_dalc_dual(&a, &k, source.labels(), 1.5, 0.7).unwrap();
            fd_assert(
                &mut |a| objective_dalc_dual(a, &k, source.labels(), 1.5, 0.7).unwrap().0,
                &g,
                &a,
            );
        }
    }

    #[test]
    fn linear_dual_equals_primal_at_the_expanded_weights() {
        let (source, target) = toy_pair(10, 17);
        let mut rng = ChaCha8Rng::seed_from_u64(7);

        // single-domain over the source Gram
        let ks = gram(source.features(), KernelKind::Linear).unwrap();
        let a = random_vector(&mut rng, ks.size(), 0.5);
        let w: DVector<f64> = source
            .features()
            .iter()
            .zip(a.iter())
            .map(|(x, &ai)| x * ai)
            .sum();
        let (vp, _) = objective_pbgd3_primal(&w, &source, 1.2, false).unwrap();
        let (vd, _) = objective_pbgd3_dual(&a, &ks, source.labels(), 1.2, false).unwrap();
        assert!((vp - vd).abs() <= 1e-8, "{vp} vs {vd}");

        // adaptation objectives over the joint Gram
        let kj = joint_gram(source.features(), target.features(), KernelKind::Linear).unwrap();
        let a = random_vector(&mut rng, kj.size(), 0.5);
        let joint: Vec<_> = source
            .features()
            .iter()
            .chain(target.features())
            .cloned()
            .collect();
        let w: DVector<f64> = joint.iter().zip(a.iter()).map(|(x, &ai)| x * ai).sum();

        let (vp, _) = objective_pbda_primal(&w, &source, &target, 1.0, 2.0, true).unwrap();
        let (vd, _) = objective_pbda_dual(&a, &kj, source.labels(), 1.0, 2.0, true).unwrap();
        assert!((vp - vd).abs() <= 1e-8, "{vp} vs {vd}");

        let (vp, _) = objective_dalc_primal(&w, &source, &target, 0.5, 1.5).unwrap();
        let (vd, _) = objective_dalc_dual(&a, &kj, source.labels(), 0.5, 1.5).unwrap();
        assert!((vp - vd).abs() <= 1e-8, "{vp} vs {vd}");
    }

    #[test]
    fn the_kink_subgradient_is_zero() {
        // identical source/target features give an exactly zero gap, so the
        // distribution-matching term must contribute nothing to the gradient
        let (source, _) = toy_pair(10, 18);
        let same = UnlabeledSample::new(source.features().to_vec()).unwrap();
        let w = DVector::from_vec(vec![0.7, -0.4]);
        let (v_on, g_on) = objective_pbda_primal(&w, &source, &same, 1.0, 5.0, true).unwrap();
        let (v_off, g_off) = objective_pbda_primal(&w, &source, &same, 1.0, 0.0, true).unwrap();
        assert_eq!(v_on, v_off);
        assert_eq!(g_on, g_off);
    }

    #[test]
    fn the_convex_surrogate_dominates_the_plain_loss() {
        let (source, _) = toy_pair(10, 19);
        let w = DVector::from_vec(vec![-3.0, 1.0]);
        let (plain, _) = objective_pbgd3_primal(&w, &source, 1.0, false).unwrap();
        let (convex, _) = objective_pbgd3_primal(&w, &source, 1.0, true).unwrap();
        assert!(convex > plain, "{convex} vs {plain}");
    }

    #[test]
    fn invalid_arguments_are_rejected() {
        let (source, target) = toy_pair(5, 20);
        let w = DVector::zeros(2);

        assert!(objective_pbgd3_primal(&w, &source, -1.0, false).is_err());
        assert!(objective_pbgd3_primal(&w, &source, f64::NAN, false).is_err());
        assert!(objective_pbgd3_primal(&DVector::zeros(3), &source, 1.0, false).is_err());

        // pbda needs equally sized samples
        let short = UnlabeledSample::new(target.features()[..7].to_vec()).unwrap();
        assert!(objective_pbda_primal(&w, &source, &short, 1.0, 1.0, true).is_err());

        // dual: label/Gram misalignment and bad labels
        let k = gram(source.features(), RBF).unwrap();
        let a = DVector::zeros(k.size());
        assert!(objective_pbgd3_dual(&a, &k, &source.labels()[..4], 1.0, false).is_err());
        let zeros = vec![0i8; k.size()];
        assert!(objective_pbgd3_dual(&a, &k, &zeros, 1.0, false).is_err());
        assert!(objective_pbgd3_dual(&DVector::zeros(3), &k, source.labels(), 1.0, false).is_err());

        // dalc dual: no target rows left
        let kj = joint_gram(source.features(), target.features(), RBF).unwrap();
        let labels_too_long = vec![1i8; kj.size()];
        let aj = DVector::zeros(kj.size());
        assert!(objective_dalc_dual(&aj, &kj, &labels_too_long, 1.0, 1.0).is_err());
    }
}
