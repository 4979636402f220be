//! The five analytic scalar losses of the linear specialization.
//!
//! Every loss is a function of the *normalized margin* x = y·⟨w,x⟩/‖x‖ and
//! comes with its exact first derivative, so objectives built from these
//! losses can hand analytic gradients to the minimizer:
//!
//! * [`probit_loss`] Φ(x) = ½·erfc(x/√2) — the Gibbs risk of the
//!   unit-variance Gaussian posterior centred on w;
//! * [`convex_probit_loss`] Φ̃(x) = max{Φ(x), ½ − x/√(2π)} — its convex
//!   relaxation (linear left of 0, Φ right of 0);
//! * [`disagreement_loss`] Φ_d(x) = 2·Φ(x)·Φ(−x) — the expected
//!   disagreement of two posterior draws at margin |x| (label-free, even);
//! * [`joint_error_loss`] Φ_e(x) = Φ(x)² — the probability that two
//!   independent posterior draws both err;
//! * the pointwise identity Φ = ½·Φ_d + Φ_e ties them together.

mod erf;

pub(crate) use erf::{erf_raw, erfc_raw};

use crate::error::{Error, Result};

/// 1/√(2π), the standard Gaussian density at 0.
pub(crate) const INV_SQRT_2PI: f64 = 0.3989422804014327;

/// Margins beyond this are saturated: the loss value is returned as exactly
/// 0 or 1 and the derivative as exactly 0.  Φ(38) already underflows to a
/// subnormal, and letting subnormals leak into gradients makes optimizer
/// trajectories noisy and platform-sensitive.
pub(crate) const MARGIN_CLAMP: f64 = 38.0;

/// A loss value together with its derivative with respect to the margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossEval {
    pub value: f64,
    pub derivative: f64,
}

fn check_finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::arg(format!("margin must be finite, got {x}")))
    }
}

/// Gauss error function erf(x) = 2/√π · ∫₀ˣ e^{−t²} dt.
///
/// Deterministic rational approximation (absolute error < 1e−15); never
/// calls a platform math intrinsic, so results are identical everywhere.
pub fn erf(x: f64) -> Result<f64> {
    Ok(erf_raw(check_finite(x)?))
}

/// Standard Gaussian density (1/√(2π))·e^{−x²/2}, which is −Φ′(x).
#[inline]
fn gauss_density(x: f64) -> f64 {
    INV_SQRT_2PI * f64::exp(-0.5 * x * x)
}

/// Φ(x) = ½·erfc(x/√2), value only.  Goes through erfc so the right tail
/// keeps full relative precision instead of cancelling against 1.
#[inline]
pub(crate) fn probit_value(x: f64) -> f64 {
    if x > MARGIN_CLAMP {
        return 0.0;
    }
    if x < -MARGIN_CLAMP {
        return 1.0;
    }
    0.5 * erfc_raw(x * std::f64::consts::FRAC_1_SQRT_2)
}

#[inline]
pub(crate) fn probit_raw(x: f64) -> LossEval {
    if x.abs() > MARGIN_CLAMP {
        return LossEval {
            value: if x > 0.0 { 0.0 } else { 1.0 },
            derivative: 0.0,
        };
    }
    LossEval {
        value: probit_value(x),
        derivative: -gauss_density(x),
    }
}

#[inline]
pub(crate) fn convex_probit_raw(x: f64) -> LossEval {
    if x > MARGIN_CLAMP {
        return LossEval {
            value: 0.0,
            derivative: 0.0,
        };
    }
    if x >= 0.0 {
        // right of 0 the max is Φ itself (Φ is convex there and the other
        // branch is its tangent at 0)
        return probit_raw(x);
    }
    // left of 0: the tangent line ½ − x/√(2π); exact for arbitrarily
    // negative margins, so no saturation on this side
    LossEval {
        value: 0.5 - x * INV_SQRT_2PI,
        derivative: -INV_SQRT_2PI,
    }
}

#[inline]
pub(crate) fn disagreement_raw(x: f64) -> LossEval {
    if x.abs() > MARGIN_CLAMP {
        return LossEval {
            value: 0.0,
            derivative: 0.0,
        };
    }
    let z = x * std::f64::consts::FRAC_1_SQRT_2;
    LossEval {
        // 2·Φ(x)·Φ(−x) expanded through erfc
        value: 0.5 * erfc_raw(z) * erfc_raw(-z),
        // −√(2/π)·erf(x/√2)·e^{−x²/2}
        derivative: -2.0 * INV_SQRT_2PI * erf_raw(z) * f64::exp(-0.5 * x * x),
    }
}

#[inline]
pub(crate) fn joint_error_raw(x: f64) -> LossEval {
    if x > MARGIN_CLAMP {
        return LossEval {
            value: 0.0,
            derivative: 0.0,
        };
    }
    if x < -MARGIN_CLAMP {
        return LossEval {
            value: 1.0,
            derivative: 0.0,
        };
    }
    let phi = probit_value(x);
    LossEval {
        value: phi * phi,
        derivative: -2.0 * phi * gauss_density(x),
    }
}

/// Probit loss Φ(x) = ½[1 − erf(x/√2)]: strictly decreasing from 1 to 0,
/// Φ(0) = ½, and Φ(x) + Φ(−x) = 1.
pub fn probit_loss(x: f64) -> Result<LossEval> {
    Ok(probit_raw(check_finite(x)?))
}

/// Convex relaxation Φ̃(x) = max{Φ(x), ½ − x/√(2π)}; equals Φ for x ≥ 0 and
/// grows linearly (slope −1/√(2π)) for x < 0.
pub fn convex_probit_loss(x: f64) -> Result<LossEval> {
    Ok(convex_probit_raw(check_finite(x)?))
}

/// Disagreement loss Φ_d(x) = 2·Φ(x)·Φ(−x): even, peaks at Φ_d(0) = ½,
/// vanishes in both tails.
pub fn disagreement_loss(x: f64) -> Result<LossEval> {
    Ok(disagreement_raw(check_finite(x)?))
}

/// Joint-error loss Φ_e(x) = Φ(x)²: strictly decreasing, Φ_e(0) = ¼.
pub fn joint_error_loss(x: f64) -> Result<LossEval> {
    Ok(joint_error_raw(check_finite(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // frozen 17-digit references from a 40-digit arbitrary-precision oracle
    const PHI_1: f64 = 0.15865525393145705;
    const PHI_D_1: f64 = 0.26696752866280387;
    const PHI_E_1: f64 = 0.025171489600055118;

    #[test]
    fn erf_frozen_values() {
        assert_eq!(erf(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            erf(std::f64::consts::FRAC_1_SQRT_2).unwrap(),
            0.6826894921370859,
            epsilon = 1e-15
        );
        for i in 0..50 {
            let x = -4.0 + 0.17 * i as f64;
            assert_eq!(erf(x).unwrap(), -erf(-x).unwrap());
        }
    }

    #[test]
    fn probit_frozen_values() {
        let at0 = probit_loss(0.0).unwrap();
        assert_eq!(at0.value, 0.5);
        assert_abs_diff_eq!(at0.derivative, -0.39894228040143268, epsilon = 1e-16);
        assert_abs_diff_eq!(probit_loss(1.0).unwrap().value, PHI_1, epsilon = 1e-15);
        assert_abs_diff_eq!(
            probit_loss(1.0).unwrap().derivative,
            -0.24197072451914335,
            epsilon = 1e-15
        );
        // far tail: indistinguishable from 0 well before the clamp
        assert!(probit_loss(37.9).unwrap().value <= 1e-12);
        assert_eq!(probit_loss(38.5).unwrap().value, 0.0);
        assert_eq!(probit_loss(38.5).unwrap().derivative, 0.0);
        assert_eq!(probit_loss(-39.0).unwrap().value, 1.0);
    }

    #[test]
    fn convex_probit_frozen_values() {
        assert_eq!(convex_probit_loss(0.0).unwrap().value, 0.5);
        let at_minus1 = convex_probit_loss(-1.0).unwrap();
        assert_abs_diff_eq!(at_minus1.value, 0.89894228040143268, epsilon = 1e-15);
        assert_eq!(at_minus1.derivative, -INV_SQRT_2PI);
        // x ≥ 0 branch coincides with the probit loss
        assert_eq!(
            convex_probit_loss(2.0).unwrap(),
            probit_loss(2.0).unwrap()
        );
        // the linear branch is exact arbitrarily far left
        let far = convex_probit_loss(-500.0).unwrap();
        assert_eq!(far.value, 0.5 + 500.0 * INV_SQRT_2PI);
        assert_eq!(far.derivative, -INV_SQRT_2PI);
    }

    #[test]
    fn disagreement_frozen_values() {
        let at0 = disagreement_loss(0.0).unwrap();
        assert_eq!(at0.value, 0.5);
        assert_eq!(at0.derivative, 0.0);
        assert_abs_diff_eq!(disagreement_loss(1.0).unwrap().value, PHI_D_1, epsilon = 1e-15);
        assert_abs_diff_eq!(
            disagreement_loss(1.0).unwrap().derivative,
            -0.33038174206803338,
            epsilon = 1e-15
        );
        for i in 0..60 {
            let x = 0.13 * i as f64;
            assert_eq!(
                disagreement_loss(x).unwrap().value,
                disagreement_loss(-x).unwrap().value,
                "evenness at {x}"
            );
        }
    }

    #[test]
    fn joint_error_frozen_values() {
        let at0 = joint_error_loss(0.0).unwrap();
        assert_eq!(at0.value, 0.25);
        assert_abs_diff_eq!(at0.derivative, -0.39894228040143268, epsilon = 1e-16);
        assert_abs_diff_eq!(joint_error_loss(1.0).unwrap().value, PHI_E_1, epsilon = 1e-15);
        assert_abs_diff_eq!(
            joint_error_loss(1.0).unwrap().derivative,
            -0.076779853485126658,
            epsilon = 1e-15
        );
    }

    #[test]
    fn pointwise_identities_on_grid() {
        // Φ + Φ(−·) = 1, Φ_d = 2ΦΦ(−·), Φ_e = Φ², Φ = ½Φ_d + Φ_e
        for i in 0..=2000 {
            let x = -10.0 + 0.01 * i as f64;
            let p = probit_value(x);
            let pm = probit_value(-x);
            let d = disagreement_raw(x).value;
            let e = joint_error_raw(x).value;
            assert!((p + pm - 1.0).abs() <= 1e-12, "Φ(x)+Φ(−x) at {x}");
            assert!((d - 2.0 * p * pm).abs() <= 1e-12, "Φ_d at {x}");
            assert!((e - p * p).abs() <= 1e-12, "Φ_e at {x}");
            assert!((p - (0.5 * d + e)).abs() <= 1e-12, "decomposition at {x}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-6;
        let losses: [(&str, fn(f64) -> LossEval); 4] = [
            ("probit", probit_raw),
            ("convex", convex_probit_raw),
            ("disagreement", disagreement_raw),
            ("joint", joint_error_raw),
        ];
        for (name, f) in losses {
            for i in 0..=80 {
                let x = -4.0 + 0.1 * i as f64;
                if name == "convex" && x.abs() < 2.0 * h {
                    continue; // kink at 0
                }
                let got = f(x).derivative;
                let fd = (f(x + h).value - f(x - h).value) / (2.0 * h);
                if got.abs() < 1e-8 {
                    continue;
                }
                assert!(
                    ((got - fd) / got).abs() <= 1e-6,
                    "{name}'({x}): analytic {got}, fd {fd}"
                );
            }
        }
    }

    #[test]
    fn convex_surrogate_chord_test() {
        let f = |x: f64| convex_probit_raw(x).value;
        let grid: Vec<f64> = (0..=120).map(|i| -6.0 + 0.1 * i as f64).collect();
        for w in grid.windows(3) {
            let (x1, x2, x3) = (w[0], w[1], w[2]);
            let chord = ((x3 - x2) * f(x1) + (x2 - x1) * f(x3)) / (x3 - x1);
            assert!(
                f(x2) <= chord + 1e-10,
                "chord test fails at ({x1},{x2},{x3})"
            );
        }
    }

    #[test]
    fn non_finite_margins_are_rejected() {
        for bad in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(erf(bad).is_err());
            assert!(probit_loss(bad).is_err());
            assert!(convex_probit_loss(bad).is_err());
            assert!(disagreement_loss(bad).is_err());
            assert!(joint_error_loss(bad).is_err());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn losses_stay_in_range(x in -1e3f64..1e3) {
                let p = probit_raw(x);
                prop_assert!((0.0..=1.0).contains(&p.value));
                let d = disagreement_raw(x);
                prop_assert!((0.0..=0.5).contains(&d.value));
                let e = joint_error_raw(x);
                prop_assert!((0.0..=1.0).contains(&e.value));
                let c = convex_probit_raw(x);
                prop_assert!(c.value >= 0.0);
                prop_assert!(c.value + 1e-15 >= p.value);
            }

            #[test]
            fn probit_is_monotone_decreasing(x in -8.0f64..30.0, dx in 1e-5f64..1.0) {
                // strict decrease is only resolvable in f64 where Φ is not
                // saturated at 1 (deep left tail rounds to exactly 1.0)
                prop_assert!(probit_value(x + dx) < probit_value(x));
            }

            #[test]
            fn erf_is_odd_and_bounded(x in -50.0f64..50.0) {
                let v = erf_raw(x);
                prop_assert!(v.abs() <= 1.0);
                prop_assert_eq!(v, -erf_raw(-x));
            }
        }
    }
}
