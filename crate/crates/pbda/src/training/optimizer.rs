//! Deterministic unconstrained minimization for the training objectives.
//!
//! A dense BFGS quasi-Newton iteration with a backtracking line search.  The
//! objectives in this crate are smooth (or piecewise-smooth with matching
//! one-sided derivatives at the single kink), low- to medium-dimensional, and
//! cheap to evaluate together with their exact gradients, which is exactly
//! the regime where full-matrix BFGS shines.  Everything is plain f64
//! arithmetic — no randomness, no threads — so a run is reproducible to the
//! bit given the same initial point and settings.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Sufficient-decrease constant of the Armijo test.
const ARMIJO_C1: f64 = 1e-4;

/// Relative floor on s·y below which the BFGS update is skipped (the secant
/// pair carries no usable curvature and would corrupt the inverse Hessian).
const CURVATURE_FLOOR: f64 = 1e-12;

/// Hard cap on step halvings inside one line search; 2⁻⁶⁰ of a unit step is
/// far below f64 resolution for any objective this crate produces.
const MAX_HALVINGS: u32 = 60;

/// Termination knobs for [`minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    /// Maximum number of accepted descent steps.
    pub max_iterations: usize,
    /// Stop when the sup-norm of the gradient falls to this value or below.
    pub grad_sup_norm_tol: f64,
    /// Stop when one step changes the objective by at most this fraction of
    /// max(1, |f|).
    pub rel_objective_tol: f64,
    /// Recorded so that the full training configuration round-trips through
    /// one struct; the minimizer itself draws no random numbers.
    pub seed: u64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            max_iterations: 1000,
            grad_sup_norm_tol: 1e-6,
            rel_objective_tol: 1e-9,
            seed: 0,
        }
    }
}

impl OptimizerSettings {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::arg("max_iterations must be ≥ 1"));
        }
        for (name, v) in [
            ("grad_sup_norm_tol", self.grad_sup_norm_tol),
            ("rel_objective_tol", self.rel_objective_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::arg(format!(
                    "{name} must be a finite value > 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Where a [`minimize`] run stopped.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: DVector<f64>,
    pub value: f64,
    pub grad_sup_norm: f64,
    /// Accepted descent steps (0 when the initial point already satisfied
    /// the gradient tolerance).
    pub iterations: usize,
}

/// Minimize a smooth objective with exact gradients.
///
/// `f` returns the value and the gradient at a point.  Termination: gradient
/// sup-norm at or below tolerance, relative objective change at or below
/// tolerance, the iteration budget, or a line search that cannot decrease
/// the objective at f64 resolution (the current iterate is then returned
/// as-is).  A non-finite objective or gradient at the initial point, or an
/// entire search ray on which the objective stays non-finite, is an
/// [`Error::Optimization`].
pub fn minimize<F>(mut f: F, init: DVector<f64>, settings: &OptimizerSettings) -> Result<Minimum>
where
    F: FnMut(&DVector<f64>) -> (f64, DVector<f64>),
{
    settings.validate()?;
    if init.is_empty() {
        return Err(Error::arg("cannot minimize over a zero-dimensional point"));
    }
    if init.iter().any(|v| !v.is_finite()) {
        return Err(Error::arg("initial point must be finite"));
    }

    let n = init.len();
    let mut x = init;
    let (mut fx, mut gx) = f(&x);
    if !fx.is_finite() || gx.iter().any(|v| !v.is_finite()) {
        return Err(Error::Optimization(format!(
            "objective or gradient is non-finite at the initial point (value {fx})"
        )));
    }

    let mut h = DMatrix::<f64>::identity(n, n);
    let mut iterations = 0usize;
    let mut first_step = true;

    for k in 1..=settings.max_iterations {
        if gx.amax() <= settings.grad_sup_norm_tol {
            break;
        }

        let mut d = -(&h * &gx);
        let mut gd = gx.dot(&d);
        if !(gd < 0.0) {
            // the inverse Hessian lost positive definiteness to rounding;
            // restart from steepest descent
            h = DMatrix::identity(n, n);
            d = -gx.clone();
            gd = -gx.norm_squared();
            if gd == 0.0 {
                break;
            }
        }

        // backtracking Armijo search along d
        let mut accepted = None;
        let mut saw_finite = false;
        let mut t = 1.0;
        for _ in 0..MAX_HALVINGS {
            let xt = &x + t * &d;
            let (ft, gt) = f(&xt);
            if ft.is_finite() {
                saw_finite = true;
                if ft <= fx + ARMIJO_C1 * t * gd && gt.iter().all(|v| v.is_finite()) {
                    accepted = Some((t, xt, ft, gt));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((t, xt, ft, gt)) = accepted else {
            if !saw_finite {
                return Err(Error::Optimization(format!(
                    "objective is non-finite along the search direction at iteration {k} \
                     (last finite value {fx})"
                )));
            }
            // a descent direction on which no tested step decreases the
            // objective: we are at the resolution limit of f64
            break;
        };
        iterations = k;

        let s = t * d;
        let y = &gt - &gx;
        let sy = s.dot(&y);
        if first_step {
            // scale the identity to the secant pair before the first update;
            // this one-time rescale fixes the initial step length problem of
            // H₀ = I on badly scaled objectives
            let yy = y.norm_squared();
            if sy > 0.0 && yy > 0.0 {
                h *= sy / yy;
            }
            first_step = false;
        }
        if sy > CURVATURE_FLOOR * s.norm() * y.norm() {
            bfgs_update(&mut h, &s, &y, sy);
        }

        let flat = (fx - ft).abs() <= settings.rel_objective_tol * fx.abs().max(1.0);
        x = xt;
        fx = ft;
        gx = gt;
        if flat {
            break;
        }
    }

    Ok(Minimum {
        grad_sup_norm: gx.amax(),
        point: x,
        value: fx,
        iterations,
    })
}

/// In-place inverse-Hessian update
/// H ← H + (s·y + yᵀHy)/(s·y)²·ssᵀ − (Hysᵀ + syᵀH)/(s·y),
/// the expanded form of (I−ρsyᵀ)H(I−ρysᵀ) + ρssᵀ with ρ = 1/(s·y).
fn bfgs_update(h: &mut DMatrix<f64>, s: &DVector<f64>, y: &DVector<f64>, sy: f64) {
    let hy = &*h * y;
    let yhy = y.dot(&hy);
    let c1 = (sy + yhy) / (sy * sy);
    let c2 = 1.0 / sy;
    let n = h.nrows();
    for j in 0..n {
        let sj = s[j];
        let hyj = hy[j];
        let mut col = h.column_mut(j);
        for i in 0..n {
            col[i] += c1 * s[i] * sj - c2 * (hy[i] * sj + s[i] * hyj);
        }
    }
}
