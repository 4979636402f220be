//! The four margin losses side by side.
//!
//! Tabulates the probit loss Φ, its convex envelope Φ̃, the disagreement
//! Φ_d and the joint error Φ_e over a range of normalized margins, then
//! checks the linking identity Φ(x) = ½·Φ_d(x) + Φ_e(x) at every grid
//! point.  The identity is what lets risk bounds trade a Gibbs risk for a
//! disagreement/joint-error pair.
//!
//! Usage: loss_curves [min] [max] [steps]  (defaults: -4 4 17)

use pbda::losses::{convex_probit_loss, disagreement_loss, joint_error_loss, probit_loss};
use pbda::Result;

fn arg_or(position: usize, default: f64) -> f64 {
    std::env::args()
        .nth(position)
        .map(|raw| raw.parse().expect("numeric argument"))
        .unwrap_or(default)
}

fn main() -> Result<()> {
    let min = arg_or(1, -4.0);
    let max = arg_or(2, 4.0);
    let steps = arg_or(3, 17.0) as usize;

    println!("{:>8}  {:>10} {:>10} {:>10} {:>10}  {:>10}", "margin", "probit", "convex", "disagree", "joint", "identity");
    let mut worst = 0.0f64;
    for k in 0..steps {
        let x = min + (max - min) * k as f64 / (steps - 1) as f64;
        let phi = probit_loss(x)?.value;
        let convex = convex_probit_loss(x)?.value;
        let dis = disagreement_loss(x)?.value;
        let joint = joint_error_loss(x)?.value;
        let residual = (phi - (0.5 * dis + joint)).abs();
        worst = worst.max(residual);
        println!("{x:>8.3}  {phi:>10.6} {convex:>10.6} {dis:>10.6} {joint:>10.6}  {residual:>10.2e}");
    }
    println!("\nworst |Φ − (½Φ_d + Φ_e)| on this grid: {worst:.3e}");

    // the convex envelope separates from Φ exactly below its tangent point
    let at_zero = convex_probit_loss(0.0)?;
    println!(
        "Φ̃ at the margin origin: value {:.6}, slope {:.6} (straight line into the tail)",
        at_zero.value, at_zero.derivative
    );
    Ok(())
}
