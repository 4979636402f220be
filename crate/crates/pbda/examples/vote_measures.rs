//! Exact majority-vote arithmetic on a small finite ensemble.
//!
//! Builds a weighted vote over a handful of fixed ±1 voters and prints
//! every measure the library estimates elsewhere by integration, here
//! computed by exact enumeration: Gibbs risk, majority-vote risk,
//! expected disagreement, expected joint error, and the C-bound.  Then
//! verifies the decomposition R_G = ½·d + e and, against a second
//! "domain" (the same voters on different points), compares the
//! ρ-weighted domain disagreement to the classical HΔH divergence.

use pbda::estimators::c_bound;
use pbda::finite_vote::{
    fv_bayes_risk, fv_disagreement, fv_domain_disagreement, fv_gibbs_risk, fv_hdh,
    fv_joint_error, FiniteVote,
};
use pbda::Result;

fn main() -> Result<()> {
    // three voters, five source points; rows are voters
    let source_votes = FiniteVote::new(
        vec![
            vec![1, 1, -1, -1, 1],
            vec![1, -1, -1, 1, 1],
            vec![-1, 1, -1, -1, -1],
        ],
        vec![0.5, 0.3, 0.2],
    )?;
    let labels = vec![1, 1, -1, -1, 1];

    let gibbs = fv_gibbs_risk(&source_votes, &labels)?;
    let bayes = fv_bayes_risk(&source_votes, &labels)?;
    let dis = fv_disagreement(&source_votes);
    let joint = fv_joint_error(&source_votes, &labels)?;

    println!("Gibbs risk            {gibbs:.6}");
    println!("majority-vote risk    {bayes:.6}");
    println!("expected disagreement {dis:.6}");
    println!("expected joint error  {joint:.6}");
    println!("decomposition check   R_G − (½d + e) = {:+.2e}", gibbs - (0.5 * dis + joint));
    println!("factor-2 bound        2·R_G = {:.6} ≥ R_B", 2.0 * gibbs);
    println!("C-bound               {:.6} ≥ R_B", c_bound(gibbs, dis)?);

    // the same ensemble seen on five target points
    let target_votes = FiniteVote::new(
        vec![
            vec![1, -1, -1, -1, 1],
            vec![1, -1, 1, 1, 1],
            vec![-1, -1, -1, -1, 1],
        ],
        vec![0.5, 0.3, 0.2],
    )?;
    let dom_dis = fv_domain_disagreement(&source_votes, &target_votes)?;
    let hdh = fv_hdh(&source_votes, &target_votes)?;
    // fv_hdh is already half the classical HΔH divergence
    println!("\ndomain disagreement   {dom_dis:.6}");
    println!("½·d_HΔH               {hdh:.6} (never smaller)");
    Ok(())
}
