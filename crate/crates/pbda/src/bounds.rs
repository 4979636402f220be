//! PAC-Bayes risk-bound calculators — the single-domain Catoni family and
//! the domain-adaptation bounds built on it — plus the β_q divergence
//! estimators and a structured report type that keeps every additive term
//! inspectable.
//!
//! Terms the learner cannot estimate from unlabeled target data (λ_ρ,
//! η_{T∖S}) are explicit placeholders: either supplied (synthetic
//! diagnostics, closed forms) or declared unknown, in which case they
//! contribute 0 and the report flags them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::estimators::LinearPosterior;

// ---------------------------------------------------------------------------
// validation helpers
// ---------------------------------------------------------------------------

fn check_positive(name: &str, v: f64) -> Result<f64> {
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::arg(format!("{name} must be a positive real, got {v}")));
    }
    Ok(v)
}

fn check_range(name: &str, v: f64, lo: f64, hi: f64) -> Result<f64> {
    if !v.is_finite() || v < lo || v > hi {
        return Err(Error::arg(format!("{name} must lie in [{lo}, {hi}], got {v}")));
    }
    Ok(v)
}

fn check_delta(delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta <= 0.0 || delta > 1.0 {
        return Err(Error::arg(format!("delta must lie in (0, 1], got {delta}")));
    }
    Ok(delta)
}

fn check_kl(kl: f64) -> Result<f64> {
    if !kl.is_finite() || kl < 0.0 {
        return Err(Error::arg(format!("kl must be nonnegative, got {kl}")));
    }
    Ok(kl)
}

fn check_count(name: &str, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::arg(format!("{name} must be at least 1")));
    }
    Ok(m as f64)
}

/// ω ↦ ω/(1−e^{−ω}), the Catoni deformation coefficient (> 1 for ω > 0).
fn catoni_coefficient(omega: f64) -> f64 {
    omega / (1.0 - (-omega).exp())
}

// ---------------------------------------------------------------------------
// report scaffolding
// ---------------------------------------------------------------------------

/// A quantity the bound needs but unlabeled target data cannot estimate.
/// `Unknown` contributes 0 to the total and is flagged in reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NonEstimable {
    Supplied(f64),
    Unknown,
}

impl NonEstimable {
    pub fn contribution(&self) -> f64 {
        match self {
            NonEstimable::Supplied(v) => *v,
            NonEstimable::Unknown => 0.0,
        }
    }

    fn validated(&self, name: &str) -> Result<Self> {
        if let NonEstimable::Supplied(v) = self {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::arg(format!(
                    "{name} must be a nonnegative real when supplied, got {v}"
                )));
            }
        }
        Ok(*self)
    }
}

/// The constants a bound was evaluated with.  Only the fields a given
/// bound uses are populated.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundConstants {
    pub omega: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub delta: f64,
    pub m: Option<usize>,
    pub m_s: Option<usize>,
    pub m_t: Option<usize>,
    pub kl: f64,
    /// 1 for single-posterior bounds, 2 where the paired-vote argument
    /// doubles the KL term.
    pub kl_multiplier: u8,
}

/// A fully decomposed bound evaluation: raw empirical inputs, the additive
/// terms they produce, the constants, the non-estimable placeholders, and
/// the total (always the exact sum of the terms).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    name: &'static str,
    empirical: Vec<(&'static str, f64)>,
    terms: Vec<(&'static str, f64)>,
    constants: BoundConstants,
    non_estimable: Vec<(&'static str, NonEstimable)>,
    total: f64,
}

impl BoundReport {
    fn assemble(
        name: &'static str,
        empirical: Vec<(&'static str, f64)>,
        terms: Vec<(&'static str, f64)>,
        constants: BoundConstants,
        non_estimable: Vec<(&'static str, NonEstimable)>,
    ) -> Self {
        let total = terms.iter().map(|(_, v)| v).sum();
        Self { name, empirical, terms, constants, non_estimable, total }
    }

    pub fn name(&self) -> &str {
        self.name
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn valid_with_probability(&self) -> f64 {
        1.0 - self.constants.delta
    }

    pub fn empirical(&self) -> &[(&'static str, f64)] {
        &self.empirical
    }

    /// The additive decomposition; summing it reproduces `total` exactly.
    pub fn terms(&self) -> &[(&'static str, f64)] {
        &self.terms
    }

    pub fn constants(&self) -> &BoundConstants {
        &self.constants
    }

    pub fn non_estimable(&self) -> &[(&'static str, NonEstimable)] {
        &self.non_estimable
    }

    pub fn recomposed_total(&self) -> f64 {
        self.terms.iter().map(|(_, v)| v).sum()
    }

    /// Flat `name=value` lines; floats carry 17 significant digits.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        line("bound", self.name.to_string());
        line("total", fmt_float(self.total));
        line("valid_with_probability", fmt_float(self.valid_with_probability()));
        for (k, v) in &self.empirical {
            line(&format!("empirical.{k}"), fmt_float(*v));
        }
        for (k, v) in &self.terms {
            line(&format!("term.{k}"), fmt_float(*v));
        }
        let c = &self.constants;
        if let Some(v) = c.omega {
            line("constant.omega", fmt_float(v));
        }
        if let Some(v) = c.a {
            line("constant.a", fmt_float(v));
        }
        if let Some(v) = c.b {
            line("constant.b", fmt_float(v));
        }
        if let Some(v) = c.c {
            line("constant.c", fmt_float(v));
        }
        line("constant.delta", fmt_float(c.delta));
        if let Some(v) = c.m {
            line("constant.m", v.to_string());
        }
        if let Some(v) = c.m_s {
            line("constant.m_s", v.to_string());
        }
        if let Some(v) = c.m_t {
            line("constant.m_t", v.to_string());
        }
        line("constant.kl", fmt_float(c.kl));
        line("constant.kl_multiplier", c.kl_multiplier.to_string());
        for (k, v) in &self.non_estimable {
            let rendered = match v {
                NonEstimable::Supplied(x) => fmt_float(*x),
                NonEstimable::Unknown => "unknown".to_string(),
            };
            line(&format!("non_estimable.{k}"), rendered);
        }
        out
    }

    /// JSON document with the same content; floats carry 17 significant
    /// digits via a custom number formatter.
    pub fn to_json(&self) -> String {
        use serde_json::{json, Map, Value};
        let float = |v: f64| Value::from(v);
        let mut empirical = Map::new();
        for (k, v) in &self.empirical {
            empirical.insert(k.to_string(), float(*v));
        }
        let mut terms = Map::new();
        for (k, v) in &self.terms {
            terms.insert(k.to_string(), float(*v));
        }
        let c = &self.constants;
        let mut constants = Map::new();
        if let Some(v) = c.omega {
            constants.insert("omega".into(), float(v));
        }
        if let Some(v) = c.a {
            constants.insert("a".into(), float(v));
        }
        if let Some(v) = c.b {
            constants.insert("b".into(), float(v));
        }
        if let Some(v) = c.c {
            constants.insert("c".into(), float(v));
        }
        constants.insert("delta".into(), float(c.delta));
        if let Some(v) = c.m {
            constants.insert("m".into(), Value::from(v));
        }
        if let Some(v) = c.m_s {
            constants.insert("m_s".into(), Value::from(v));
        }
        if let Some(v) = c.m_t {
            constants.insert("m_t".into(), Value::from(v));
        }
        constants.insert("kl".into(), float(c.kl));
        constants.insert("kl_multiplier".into(), Value::from(c.kl_multiplier));
        let mut non_est = Map::new();
        for (k, v) in &self.non_estimable {
            let entry = match v {
                NonEstimable::Supplied(x) => json!({"status": "supplied", "value": x}),
                NonEstimable::Unknown => json!({"status": "unknown"}),
            };
            non_est.insert(k.to_string(), entry);
        }
        let doc = json!({
            "bound": self.name,
            "total": self.total,
            "valid_with_probability": self.valid_with_probability(),
            "empirical": Value::Object(empirical),
            "terms": Value::Object(terms),
            "constants": Value::Object(constants),
            "non_estimable": Value::Object(non_est),
        });
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciNotation);
        serde::Serialize::serialize(&doc, &mut ser).expect("in-memory JSON write");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }
}

/// 17-significant-digit float rendering used by all report output (and by
/// the CLI for every float it emits): lossless, fixed-width, locale-free.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// serde_json formatter that renders every f64 with 17 significant digits
/// instead of the default shortest-roundtrip form.
struct SciNotation;

impl serde_json::ser::Formatter for SciNotation {
    fn write_f64<W: std::io::Write + ?Sized>(
        &mut self,
        writer: &mut W,
        value: f64,
    ) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

// ---------------------------------------------------------------------------
// single-domain bounds
// ---------------------------------------------------------------------------

/// Catoni-style PAC-Bayes bound on the Gibbs risk:
/// (ω/(1−e^{−ω}))·[emp_risk + (kl + ln(1/δ))/(m·ω)].
pub fn catoni_bound(emp_risk: f64, m: usize, kl: f64, delta: f64, omega: f64) -> Result<f64> {
    check_range("emp_risk", emp_risk, 0.0, 1.0)?;
    let m = check_count("m", m)?;
    check_kl(kl)?;
    check_delta(delta)?;
    check_positive("omega", omega)?;
    Ok(catoni_coefficient(omega) * (emp_risk + (kl + (1.0 / delta).ln()) / (m * omega)))
}

/// The looser-but-simpler variant: (1/(1−ω/2))·[same bracket], ω ∈ (0,2).
pub fn catoni_simplified(
    emp_risk: f64,
    m: usize,
    kl: f64,
    delta: f64,
    omega: f64,
) -> Result<f64> {
    check_range("emp_risk", emp_risk, 0.0, 1.0)?;
    let m = check_count("m", m)?;
    check_kl(kl)?;
    check_delta(delta)?;
    if !omega.is_finite() || omega <= 0.0 || omega >= 2.0 {
        return Err(Error::arg(format!("omega must lie in (0, 2), got {omega}")));
    }
    Ok((emp_risk + (kl + (1.0 / delta).ln()) / (m * omega)) / (1.0 - omega / 2.0))
}

// ---------------------------------------------------------------------------
// paired-vote bounds
// ---------------------------------------------------------------------------

/// Which pairwise quantity a paired-vote bound certifies.  The paired
/// posterior doubles the KL term in every kind; the domain-disagreement
/// kind additionally works on the shifted [−1,1] range, hence its extra
/// +1/−1 structure and doubled trade-off constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    TargetDisagreement,
    SourceJoint,
    DomainDisagreement,
}

/// Catoni-style bound on a pairwise vote quantity.
///
/// * disagreement / joint error: (c/(1−e^{−c}))·[emp + (2kl + ln(1/δ))/(m·c)]
/// * domain disagreement: (2a/(1−e^{−2a}))·[emp + (2kl + ln(2/δ))/(m·a) + 1] − 1
pub fn corollary7_bound(
    kind: PairKind,
    emp_value: f64,
    m: usize,
    kl: f64,
    delta: f64,
    constant: f64,
) -> Result<f64> {
    let m = check_count("m", m)?;
    check_kl(kl)?;
    check_delta(delta)?;
    check_positive("constant", constant)?;
    match kind {
        PairKind::TargetDisagreement => {
            check_range("disagreement", emp_value, 0.0, 0.5)?;
            let c = constant;
            Ok(catoni_coefficient(c) * (emp_value + (2.0 * kl + (1.0 / delta).ln()) / (m * c)))
        }
        PairKind::SourceJoint => {
            check_range("joint error", emp_value, 0.0, 1.0)?;
            let c = constant;
            Ok(catoni_coefficient(c) * (emp_value + (2.0 * kl + (1.0 / delta).ln()) / (m * c)))
        }
        PairKind::DomainDisagreement => {
            check_range("domain disagreement", emp_value, 0.0, 0.5)?;
            let a = constant;
            let coeff = catoni_coefficient(2.0 * a);
            Ok(coeff * (emp_value + (2.0 * kl + (2.0 / delta).ln()) / (m * a) + 1.0) - 1.0)
        }
    }
}

/// Domain-adaptation bound through the source Gibbs risk and the domain
/// disagreement, on equal-size samples (m = m_s = m_t):
///
/// total = ω′·R̂_S + a′·½·dîs + (ω′/ω + a′/a)·(kl + ln(3/δ))/m + λ + ½(a′−1)
///
/// with ω′ = ω/(1−e^{−ω}) and a′ = 2a/(1−e^{−2a}).
pub fn theorem8_bound(
    emp_gibbs_s: f64,
    emp_dis: f64,
    m: usize,
    kl: f64,
    delta: f64,
    omega: f64,
    a: f64,
    lambda_rho: NonEstimable,
) -> Result<BoundReport> {
    check_range("emp_gibbs_s", emp_gibbs_s, 0.0, 1.0)?;
    check_range("emp_dis", emp_dis, 0.0, 0.5)?;
    let mf = check_count("m", m)?;
    check_kl(kl)?;
    check_delta(delta)?;
    check_positive("omega", omega)?;
    check_positive("a", a)?;
    let lambda_rho = lambda_rho.validated("lambda_rho")?;

    let omega_p = catoni_coefficient(omega);
    let a_p = catoni_coefficient(2.0 * a);
    let terms = vec![
        ("source_gibbs", omega_p * emp_gibbs_s),
        ("domain_disagreement", a_p * 0.5 * emp_dis),
        (
            "complexity",
            (omega_p / omega + a_p / a) * (kl + (3.0 / delta).ln()) / mf,
        ),
        ("lambda_rho", lambda_rho.contribution()),
        ("constant_shift", 0.5 * (a_p - 1.0)),
    ];
    Ok(BoundReport::assemble(
        "theorem8",
        vec![("source_gibbs", emp_gibbs_s), ("domain_disagreement", emp_dis)],
        terms,
        BoundConstants {
            omega: Some(omega),
            a: Some(a),
            delta,
            m: Some(m),
            kl,
            kl_multiplier: 1,
            ..Default::default()
        },
        vec![("lambda_rho", lambda_rho)],
    ))
}

/// Domain-adaptation bound through the target disagreement and source
/// joint error, with the density-ratio supremum β_∞ as a hyperparameter:
///
/// total = c′·½·d̂_T + b′·ê_S + η + (c′/(m_t·c) + b′/(m_s·b))·(2kl + ln(2/δ))
///
/// with b′ = (b/(1−e^{−b}))·β_∞ and c′ = c/(1−e^{−c}).
#[allow(clippy::too_many_arguments)]
pub fn theorem9_bound(
    emp_dis_t: f64,
    emp_joint_s: f64,
    m_s: usize,
    m_t: usize,
    kl: f64,
    delta: f64,
    b: f64,
    c: f64,
    beta_inf: f64,
    eta: NonEstimable,
) -> Result<BoundReport> {
    check_range("emp_dis_t", emp_dis_t, 0.0, 0.5)?;
    check_range("emp_joint_s", emp_joint_s, 0.0, 1.0)?;
    let msf = check_count("m_s", m_s)?;
    let mtf = check_count("m_t", m_t)?;
    check_kl(kl)?;
    check_delta(delta)?;
    check_positive("b", b)?;
    check_positive("c", c)?;
    if !beta_inf.is_finite() || beta_inf < 1.0 {
        // the supremum of a density ratio over a common support cannot be
        // below 1 when both densities integrate to the same mass on it,
        // and an infinite supremum makes the bound vacuous
        return Err(Error::arg(format!(
            "beta_inf must be a finite real ≥ 1, got {beta_inf}"
        )));
    }
    let eta = eta.validated("eta_t_minus_s")?;

    let b_p = catoni_coefficient(b) * beta_inf;
    let c_p = catoni_coefficient(c);
    let terms = vec![
        ("target_disagreement", c_p * 0.5 * emp_dis_t),
        ("source_joint_error", b_p * emp_joint_s),
        ("eta_t_minus_s", eta.contribution()),
        (
            "complexity",
            (c_p / (mtf * c) + b_p / (msf * b)) * (2.0 * kl + (2.0 / delta).ln()),
        ),
    ];
    Ok(BoundReport::assemble(
        "theorem9",
        vec![
            ("target_disagreement", emp_dis_t),
            ("source_joint_error", emp_joint_s),
        ],
        terms,
        BoundConstants {
            b: Some(b),
            c: Some(c),
            delta,
            m_s: Some(m_s),
            m_t: Some(m_t),
            kl,
            kl_multiplier: 2,
            ..Default::default()
        },
        vec![("beta_inf", NonEstimable::Supplied(beta_inf)), ("eta_t_minus_s", eta)],
    ))
}

// ---------------------------------------------------------------------------
// linear-classifier corollaries (majority-vote versions)
// ---------------------------------------------------------------------------

/// Majority-vote version of the ω/a adaptation bound for the Gaussian
/// posterior at `w` (kl = ‖w‖²/2):
///
/// total = 2ω′·R̂_S(G) + a′·dîs + 2λ + 2(ω′/ω + a′/a)·(‖w‖² + ln(3/δ))/m + (a′−1)
pub fn corollary12_bound(
    emp_gibbs_s: f64,
    emp_dis: f64,
    m: usize,
    posterior: &LinearPosterior,
    delta: f64,
    omega: f64,
    a: f64,
    lambda_rho: NonEstimable,
) -> Result<BoundReport> {
    check_range("emp_gibbs_s", emp_gibbs_s, 0.0, 1.0)?;
    check_range("emp_dis", emp_dis, 0.0, 0.5)?;
    let mf = check_count("m", m)?;
    check_delta(delta)?;
    check_positive("omega", omega)?;
    check_positive("a", a)?;
    let lambda_rho = lambda_rho.validated("lambda_rho")?;

    let w_sq = posterior.weights().norm_squared();
    let omega_p = catoni_coefficient(omega);
    let a_p = catoni_coefficient(2.0 * a);
    let terms = vec![
        ("source_gibbs", 2.0 * omega_p * emp_gibbs_s),
        ("domain_disagreement", a_p * emp_dis),
        (
            "complexity",
            2.0 * (omega_p / omega + a_p / a) * (w_sq + (3.0 / delta).ln()) / mf,
        ),
        ("lambda_rho", 2.0 * lambda_rho.contribution()),
        ("constant_shift", a_p - 1.0),
    ];
    Ok(BoundReport::assemble(
        "corollary12",
        vec![("source_gibbs", emp_gibbs_s), ("domain_disagreement", emp_dis)],
        terms,
        BoundConstants {
            omega: Some(omega),
            a: Some(a),
            delta,
            m: Some(m),
            kl: 0.5 * w_sq,
            kl_multiplier: 2,
            ..Default::default()
        },
        vec![("lambda_rho", lambda_rho)],
    ))
}

/// Majority-vote version of the b/c adaptation bound for the Gaussian
/// posterior at `w` (kl = ‖w‖²/2):
///
/// total = c′·d̂_T + 2b′·ê_S + 2η + 2(c′/(m_t·c) + b′/(m_s·b))·(‖w‖² + ln(2/δ))
#[allow(clippy::too_many_arguments)]
pub fn corollary13_bound(
    emp_dis_t: f64,
    emp_joint_s: f64,
    m_s: usize,
    m_t: usize,
    posterior: &LinearPosterior,
    delta: f64,
    b: f64,
    c: f64,
    beta_inf: f64,
    eta: NonEstimable,
) -> Result<BoundReport> {
    check_range("emp_dis_t", emp_dis_t, 0.0, 0.5)?;
    check_range("emp_joint_s", emp_joint_s, 0.0, 1.0)?;
    let msf = check_count("m_s", m_s)?;
    let mtf = check_count("m_t", m_t)?;
    check_delta(delta)?;
    check_positive("b", b)?;
    check_positive("c", c)?;
    if !beta_inf.is_finite() || beta_inf < 1.0 {
        return Err(Error::arg(format!(
            "beta_inf must be a finite real ≥ 1, got {beta_inf}"
        )));
    }
    let eta = eta.validated("eta_t_minus_s")?;

    let w_sq = posterior.weights().norm_squared();
    let b_p = catoni_coefficient(b) * beta_inf;
    let c_p = catoni_coefficient(c);
    let terms = vec![
        ("target_disagreement", c_p * emp_dis_t),
        ("source_joint_error", 2.0 * b_p * emp_joint_s),
        ("eta_t_minus_s", 2.0 * eta.contribution()),
        (
            "complexity",
            2.0 * (c_p / (mtf * c) + b_p / (msf * b)) * (w_sq + (2.0 / delta).ln()),
        ),
    ];
    Ok(BoundReport::assemble(
        "corollary13",
        vec![
            ("target_disagreement", emp_dis_t),
            ("source_joint_error", emp_joint_s),
        ],
        terms,
        BoundConstants {
            b: Some(b),
            c: Some(c),
            delta,
            m_s: Some(m_s),
            m_t: Some(m_t),
            kl: 0.5 * w_sq,
            kl_multiplier: 2,
            ..Default::default()
        },
        vec![("beta_inf", NonEstimable::Supplied(beta_inf)), ("eta_t_minus_s", eta)],
    ))
}

// ---------------------------------------------------------------------------
// β_q divergence estimators
// ---------------------------------------------------------------------------

/// Monte-Carlo estimate of β_q: draw from the source domain and return
/// [mean of density_ratio(x)^q]^{1/q}, where density_ratio is the
/// target-over-source density ratio at the draw.
///
/// The estimator is unbiased in ratio^q but can be extremely heavy-tailed
/// when the domains are far apart (the ratio is lognormal for Gaussian
/// shifts); see [`beta_q_mc_target`] for a finite-variance alternative.
pub fn beta_q_mc<T>(
    mut source_sampler: impl FnMut(&mut ChaCha8Rng) -> T,
    density_ratio: impl Fn(&T) -> f64,
    q: f64,
    n_draws: usize,
    seed: u64,
) -> Result<f64> {
    mc_power_mean(&mut source_sampler, &density_ratio, q, q, n_draws, seed)
}

/// Change-of-measure form of the same estimand: since
/// E_S[(T/S)^q] = E_T[(T/S)^{q−1}], drawing from the *target* domain and
/// averaging ratio^{q−1} estimates the identical β_q with draws placed
/// where the integrand mass lives, so the variance stays finite even for
/// well-separated domains.
pub fn beta_q_mc_target<T>(
    mut target_sampler: impl FnMut(&mut ChaCha8Rng) -> T,
    density_ratio: impl Fn(&T) -> f64,
    q: f64,
    n_draws: usize,
    seed: u64,
) -> Result<f64> {
    mc_power_mean(&mut target_sampler, &density_ratio, q - 1.0, q, n_draws, seed)
}

fn mc_power_mean<T>(
    sampler: &mut impl FnMut(&mut ChaCha8Rng) -> T,
    density_ratio: &impl Fn(&T) -> f64,
    inner_power: f64,
    q: f64,
    n_draws: usize,
    seed: u64,
) -> Result<f64> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::arg(format!("q must be a positive real, got {q}")));
    }
    if n_draws == 0 {
        return Err(Error::arg("beta_q estimation needs n_draws ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0;
    for _ in 0..n_draws {
        let x = sampler(&mut rng);
        let r = density_ratio(&x);
        if !r.is_finite() || r < 0.0 {
            return Err(Error::arg(format!(
                "density ratio must be finite and nonnegative, got {r}"
            )));
        }
        acc += r.powf(inner_power);
    }
    Ok((acc / n_draws as f64).powf(1.0 / q))
}

/// Closed-form β_q for two unit-covariance Gaussians:
/// exp((q−1)·‖μ_t−μ_s‖²/2).
pub fn beta_q_gaussian(mu_s: &[f64], mu_t: &[f64], q: f64) -> Result<f64> {
    if mu_s.len() != mu_t.len() {
        return Err(Error::arg(format!(
            "mean dimensions differ: {} vs {}",
            mu_s.len(),
            mu_t.len()
        )));
    }
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::arg(format!("q must be a positive real, got {q}")));
    }
    let shift_sq: f64 = mu_s
        .iter()
        .zip(mu_t)
        .map(|(s, t)| (t - s) * (t - s))
        .sum();
    Ok(((q - 1.0) * shift_sq / 2.0).exp())
}

/// The q → ∞ limit for unit-covariance Gaussians: 1 when the means agree,
/// +∞ otherwise (the density ratio is an unbounded exponential for any
/// nonzero shift).
pub fn beta_inf_gaussian(mu_s: &[f64], mu_t: &[f64]) -> Result<f64> {
    if mu_s.len() != mu_t.len() {
        return Err(Error::arg(format!(
            "mean dimensions differ: {} vs {}",
            mu_s.len(),
            mu_t.len()
        )));
    }
    if mu_s.iter().zip(mu_t).all(|(s, t)| s == t) {
        Ok(1.0)
    } else {
        Ok(f64::INFINITY)
    }
}
