//! Closed-form risk estimators versus brute-force Monte Carlo.
//!
//! For a Gaussian posterior centered on a weight vector, the Gibbs risk
//! over a sample has a closed form through the probit loss.  This example
//! draws a supervised Gaussian toy, evaluates the closed form, and checks
//! it against the defining experiment: sample many classifiers from the
//! posterior and average their 0-1 risks.  The same is done for the β_q
//! domain-divergence, whose shifted-Gaussian closed form exp((q−1)s²/2)
//! is compared with a change-of-measure Monte-Carlo estimate.
//!
//! Usage: risk_estimators [n_draws] [seed]  (defaults: 200000 1)

use pbda::bounds::{beta_q_gaussian, beta_q_mc_target};
use pbda::data::{gen_toy, ToyKind, ToySpec};
use pbda::estimators::{
    c_bound, disagreement, gibbs_risk, monte_carlo_gibbs, LinearPosterior, MarginProvider,
};
use pbda::data::UnlabeledSample;
use pbda::Result;
use rand_distr::Distribution;

fn arg_or(position: usize, default: f64) -> f64 {
    std::env::args()
        .nth(position)
        .map(|raw| raw.parse().expect("numeric argument"))
        .unwrap_or(default)
}

fn main() -> Result<()> {
    let n_draws = arg_or(1, 200_000.0) as usize;
    let seed = arg_or(2, 1.0) as u64;

    let (sample, _) = gen_toy(&ToySpec {
        kind: ToyKind::GaussianSupervised,
        n_per_class: 100,
        noise_sigma: 1.0,
        rotation_deg: 0.0,
        seed,
    })?;
    let posterior = LinearPosterior::new(nalgebra::dvector![1.2, -0.4])?;

    let closed = gibbs_risk(MarginProvider::primal(&posterior), &sample)?;
    let (mc, stderr) = monte_carlo_gibbs(posterior.weights(), &sample, n_draws, seed)?;
    println!("Gibbs risk  closed form {closed:.6}");
    println!("Gibbs risk  Monte Carlo {mc:.6} ± {stderr:.6}  ({n_draws} draws)");
    println!("gap in standard errors  {:.2}", (closed - mc).abs() / stderr);

    let features = UnlabeledSample::new(sample.features().to_vec())?;
    let dis = disagreement(MarginProvider::primal(&posterior), &features)?;
    println!("\ndisagreement {dis:.6}  →  C-bound {:.6}", c_bound(closed, dis)?);
    println!("KL to the prior: ‖w‖²/2 = {:.6}", posterior.kl());

    // β₂ between two unit Gaussians two standard deviations apart
    let (mu_s, mu_t) = ([0.0, 0.0], [2.0, 0.0]);
    let closed_beta = beta_q_gaussian(&mu_s, &mu_t, 2.0)?;
    let ratio = |x: &[f64; 2]| {
        let ds: f64 = x.iter().zip(&mu_s).map(|(v, m)| (v - m) * (v - m)).sum();
        let dt: f64 = x.iter().zip(&mu_t).map(|(v, m)| (v - m) * (v - m)).sum();
        ((ds - dt) / 2.0).exp()
    };
    let mc_beta = beta_q_mc_target(
        |rng| {
            let n1: f64 = rand_distr::StandardNormal.sample(rng);
            let n2: f64 = rand_distr::StandardNormal.sample(rng);
            [mu_t[0] + n1, mu_t[1] + n2]
        },
        ratio,
        2.0,
        n_draws,
        seed,
    )?;
    println!("\nβ₂ closed form {closed_beta:.6} (= e²)");
    println!("β₂ Monte Carlo {mc_beta:.6}  (relative gap {:+.4})", mc_beta / closed_beta - 1.0);
    Ok(())
}
