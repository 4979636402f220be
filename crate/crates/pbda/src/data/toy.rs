//! Synthetic source/target pairs for the toy experiments.

use std::fmt;
use std::str::FromStr;

use nalgebra::{dvector, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::data::LabeledSample;
use crate::error::{Error, Result};

/// Which synthetic pair to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToyKind {
    /// Two intertwining moons; the target domain is the source distribution
    /// rotated about the origin.
    TwoMoons,
    /// Two unit-covariance Gaussian classes; the target sample is an exact
    /// copy of the source (no shift — a supervised sanity setting).
    GaussianSupervised,
    /// Same source; the target's negative class shifts from mean (−1,+1) to
    /// (+1,+1), so adaptation is genuinely required.
    GaussianDa,
}

impl FromStr for ToyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two_moons" => Ok(Self::TwoMoons),
            "gaussian_supervised" => Ok(Self::GaussianSupervised),
            "gaussian_da" => Ok(Self::GaussianDa),
            other => Err(Error::arg(format!(
                "unknown toy kind `{other}` (expected two_moons, gaussian_supervised or gaussian_da)"
            ))),
        }
    }
}

impl fmt::Display for ToyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::TwoMoons => "two_moons",
            Self::GaussianSupervised => "gaussian_supervised",
            Self::GaussianDa => "gaussian_da",
        })
    }
}

/// Parameters of a toy draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToySpec {
    pub kind: ToyKind,
    pub n_per_class: usize,
    /// Standard deviation of the isotropic Gaussian jitter added to moon
    /// points (ignored by the Gaussian toys, which have unit covariance).
    pub noise_sigma: f64,
    /// Rotation of the target moons in degrees (moons only).
    pub rotation_deg: f64,
    pub seed: u64,
}

impl ToySpec {
    fn validate(&self) -> Result<()> {
        if self.n_per_class < 1 {
            return Err(Error::arg("n_per_class must be ≥ 1"));
        }
        if !self.noise_sigma.is_finite() || self.noise_sigma < 0.0 {
            return Err(Error::arg(format!(
                "noise_sigma must be a finite value ≥ 0, got {}",
                self.noise_sigma
            )));
        }
        if !self.rotation_deg.is_finite() {
            return Err(Error::arg("rotation_deg must be finite"));
        }
        Ok(())
    }
}

fn gaussian_class(
    rng: &mut ChaCha8Rng,
    mean: (f64, f64),
    n: usize,
    label: i8,
    features: &mut Vec<DVector<f64>>,
    labels: &mut Vec<i8>,
) {
    for _ in 0..n {
        let ex: f64 = rng.sample(StandardNormal);
        let ey: f64 = rng.sample(StandardNormal);
        features.push(dvector![mean.0 + ex, mean.1 + ey]);
        labels.push(label);
    }
}

fn gaussian_pair(spec: &ToySpec, neg_target_mean: (f64, f64)) -> Result<(LabeledSample, LabeledSample)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n_per_class;
    let mut xs = Vec::with_capacity(2 * n);
    let mut ys = Vec::with_capacity(2 * n);
    gaussian_class(&mut rng, (-1.0, -1.0), n, 1, &mut xs, &mut ys);
    gaussian_class(&mut rng, (-1.0, 1.0), n, -1, &mut xs, &mut ys);
    let source = LabeledSample::new(xs, ys)?;

    let target = if spec.kind == ToyKind::GaussianSupervised {
        source.clone()
    } else {
        let mut xt = Vec::with_capacity(2 * n);
        let mut yt = Vec::with_capacity(2 * n);
        gaussian_class(&mut rng, (-1.0, -1.0), n, 1, &mut xt, &mut yt);
        gaussian_class(&mut rng, neg_target_mean, n, -1, &mut xt, &mut yt);
        LabeledSample::new(xt, yt)?
    };
    Ok((source, target))
}

/// One moons draw: upper moon (+1) at (cos t, sin t), lower moon (−1) at
/// (1 − cos t, ½ − sin t), t ~ U[0, π], plus N(0, σ²·I) jitter, then a
/// rotation about the origin.
fn moons_draw(rng: &mut ChaCha8Rng, spec: &ToySpec, rotation_deg: f64) -> Result<LabeledSample> {
    let n = spec.n_per_class;
    let mut xs = Vec::with_capacity(2 * n);
    let mut ys = Vec::with_capacity(2 * n);
    for class in [1i8, -1] {
        for _ in 0..n {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::PI);
            let (mut px, mut py) = if class == 1 {
                (t.cos(), t.sin())
            } else {
                (1.0 - t.cos(), 0.5 - t.sin())
            };
            if spec.noise_sigma > 0.0 {
                let ex: f64 = rng.sample(StandardNormal);
                let ey: f64 = rng.sample(StandardNormal);
                px += spec.noise_sigma * ex;
                py += spec.noise_sigma * ey;
            }
            xs.push(dvector![px, py]);
            ys.push(class);
        }
    }
    if rotation_deg != 0.0 {
        let a = rotation_deg.to_radians();
        let (sin, cos) = (a.sin(), a.cos());
        for x in &mut xs {
            let (px, py) = (x[0], x[1]);
            x[0] = cos * px - sin * py;
            x[1] = sin * px + cos * py;
        }
    }
    LabeledSample::new(xs, ys)
}

/// Draw a (source, target) pair.  Deterministic in `spec.seed`.  Target
/// labels are returned so callers can *evaluate* on the target; adaptation
/// algorithms must not look at them.
pub fn gen_toy(spec: &ToySpec) -> Result<(LabeledSample, LabeledSample)> {
    spec.validate()?;
    match spec.kind {
        ToyKind::GaussianSupervised => gaussian_pair(spec, (-1.0, 1.0)),
        ToyKind::GaussianDa => gaussian_pair(spec, (1.0, 1.0)),
        ToyKind::TwoMoons => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let source = moons_draw(&mut rng, spec, 0.0)?;
            // fresh draws for the target, not a rotated copy
            let target = moons_draw(&mut rng, spec, spec.rotation_deg)?;
            Ok((source, target))
        }
    }
}
