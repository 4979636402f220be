//! Brute-force vote quantities over an explicit finite hypothesis set with
//! explicit weights.  Everything here is computed by direct enumeration —
//! double loops over hypothesis pairs where the definition has one — so
//! this module serves as the ground-truth oracle for the ρ-average
//! identities and the HΔH comparison.  It is a verifier, not a learner.

use crate::error::{Error, Result};

/// A finite weighted vote: an n_votes × n_examples prediction matrix over
/// {−1,+1} and nonnegative weights summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteVote {
    predictions: Vec<Vec<i8>>,
    rho: Vec<f64>,
}

impl FiniteVote {
    pub fn new(predictions: Vec<Vec<i8>>, rho: Vec<f64>) -> Result<Self> {
        if predictions.is_empty() {
            return Err(Error::arg("need at least one voter"));
        }
        let n = predictions[0].len();
        if n == 0 {
            return Err(Error::arg("need at least one example column"));
        }
        for (h, row) in predictions.iter().enumerate() {
            if row.len() != n {
                return Err(Error::arg(format!(
                    "voter {h} predicts {} examples, expected {n}",
                    row.len()
                )));
            }
            if row.iter().any(|p| *p != 1 && *p != -1) {
                return Err(Error::arg(format!("voter {h} has a prediction outside ±1")));
            }
        }
        if rho.len() != predictions.len() {
            return Err(Error::arg(format!(
                "{} weights for {} voters",
                rho.len(),
                predictions.len()
            )));
        }
        if rho.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::arg("vote weights must be finite and nonnegative"));
        }
        let total: f64 = rho.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::arg(format!("vote weights sum to {total}, expected 1")));
        }
        Ok(Self { predictions, rho })
    }

    pub fn n_votes(&self) -> usize {
        self.predictions.len()
    }

    pub fn n_examples(&self) -> usize {
        self.predictions[0].len()
    }

    pub fn predictions(&self) -> &[Vec<i8>] {
        &self.predictions
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    fn check_labels(&self, labels: &[i8]) -> Result<()> {
        if labels.len() != self.n_examples() {
            return Err(Error::arg(format!(
                "{} labels for {} example columns",
                labels.len(),
                self.n_examples()
            )));
        }
        if labels.iter().any(|y| *y != 1 && *y != -1) {
            return Err(Error::arg("labels must be ±1"));
        }
        Ok(())
    }

    /// Rejects pairs that do not share the same hypothesis set: the vote
    /// counts and weights must match exactly (prediction columns are the
    /// per-domain part and may differ).
    fn check_same_votes(&self, other: &FiniteVote) -> Result<()> {
        if self.n_votes() != other.n_votes() || self.rho != other.rho {
            return Err(Error::arg(
                "the two votes must share the same hypothesis set and weights",
            ));
        }
        Ok(())
    }

    /// Fraction of examples where voters h and h′ disagree.
    fn pair_disagreement(&self, h: usize, hp: usize) -> f64 {
        let n = self.n_examples();
        let count = self.predictions[h]
            .iter()
            .zip(&self.predictions[hp])
            .filter(|(a, b)| a != b)
            .count();
        count as f64 / n as f64
    }
}

/// Error rate of a single voter.
pub fn fv_voter_risk(v: &FiniteVote, labels: &[i8], h_index: usize) -> Result<f64> {
    v.check_labels(labels)?;
    if h_index >= v.n_votes() {
        return Err(Error::arg(format!(
            "voter index {h_index} out of range for {} voters",
            v.n_votes()
        )));
    }
    let errors = v.predictions[h_index]
        .iter()
        .zip(labels)
        .filter(|(p, y)| p != y)
        .count();
    Ok(errors as f64 / v.n_examples() as f64)
}

/// Gibbs risk: the ρ-weighted average of the voters' error rates.
pub fn fv_gibbs_risk(v: &FiniteVote, labels: &[i8]) -> Result<f64> {
    v.check_labels(labels)?;
    let mut risk = 0.0;
    for h in 0..v.n_votes() {
        risk += v.rho[h] * fv_voter_risk(v, labels, h)?;
    }
    Ok(risk)
}

/// Majority-vote risk: error rate of sign(Σ_h ρ_h·h(x)), with sign(0)
/// broken to +1.
pub fn fv_bayes_risk(v: &FiniteVote, labels: &[i8]) -> Result<f64> {
    v.check_labels(labels)?;
    let n = v.n_examples();
    let mut errors = 0usize;
    for (i, y) in labels.iter().enumerate() {
        let avg: f64 = (0..v.n_votes())
            .map(|h| v.rho[h] * f64::from(v.predictions[h][i]))
            .sum();
        let predicted: i8 = if avg >= 0.0 { 1 } else { -1 };
        if predicted != *y {
            errors += 1;
        }
    }
    Ok(errors as f64 / n as f64)
}

/// Expected disagreement: probability that two independent ρ-draws
/// disagree on a uniformly random example column.
pub fn fv_disagreement(v: &FiniteVote) -> f64 {
    let mut total = 0.0;
    for h in 0..v.n_votes() {
        for hp in 0..v.n_votes() {
            total += v.rho[h] * v.rho[hp] * v.pair_disagreement(h, hp);
        }
    }
    total
}

/// Expected joint error: probability that two independent ρ-draws both
/// err on a uniformly random example column.
pub fn fv_joint_error(v: &FiniteVote, labels: &[i8]) -> Result<f64> {
    v.check_labels(labels)?;
    let n = v.n_examples() as f64;
    let mut total = 0.0;
    for h in 0..v.n_votes() {
        for hp in 0..v.n_votes() {
            let both = v.predictions[h]
                .iter()
                .zip(&v.predictions[hp])
                .zip(labels)
                .filter(|((a, b), y)| *a != *y && *b != *y)
                .count();
            total += v.rho[h] * v.rho[hp] * (both as f64 / n);
        }
    }
    Ok(total)
}

/// Domain disagreement between two example sets under the same vote:
/// |d_T − d_S|.
pub fn fv_domain_disagreement(v_s: &FiniteVote, v_t: &FiniteVote) -> Result<f64> {
    v_s.check_same_votes(v_t)?;
    Ok((fv_disagreement(v_t) - fv_disagreement(v_s)).abs())
}

/// Half the HΔH-distance between the two example sets:
/// max over vote pairs (h,h′) of |disagree_T(h,h′) − disagree_S(h,h′)|.
pub fn fv_hdh(v_s: &FiniteVote, v_t: &FiniteVote) -> Result<f64> {
    v_s.check_same_votes(v_t)?;
    let mut best = 0.0f64;
    for h in 0..v_s.n_votes() {
        for hp in 0..v_s.n_votes() {
            let gap = (v_t.pair_disagreement(h, hp) - v_s.pair_disagreement(h, hp)).abs();
            best = best.max(gap);
        }
    }
    Ok(best)
}

/// Right-hand side of the classic domain-adaptation risk bound for voter
/// `h_index`: R_S(h) + ½d_{HΔH} + min_h″ [R_S(h″) + R_T(h″)].  A
/// fully-labeled diagnostic; it deterministically upper-bounds R_T(h).
pub fn fv_bendavid_rhs(
    v_s: &FiniteVote,
    labels_s: &[i8],
    v_t: &FiniteVote,
    labels_t: &[i8],
    h_index: usize,
) -> Result<f64> {
    let r_s = fv_voter_risk(v_s, labels_s, h_index)?;
    v_t.check_labels(labels_t)?;
    let hdh = fv_hdh(v_s, v_t)?;
    let mut mu = f64::INFINITY;
    for h in 0..v_s.n_votes() {
        let joint_best = fv_voter_risk(v_s, labels_s, h)? + fv_voter_risk(v_t, labels_t, h)?;
        mu = mu.min(joint_best);
    }
    Ok(r_s + hdh + mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::c_bound;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_instance(
        rng: &mut ChaCha8Rng,
        n_votes: usize,
        n_examples: usize,
    ) -> (FiniteVote, Vec<i8>) {
        let predictions = (0..n_votes)
            .map(|_| {
                (0..n_examples)
                    .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
                    .collect()
            })
            .collect();
        let raw: Vec<f64> = (0..n_votes).map(|_| rng.gen_range(0.01..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let rho = raw.iter().map(|w| w / total).collect();
        let labels = (0..n_examples)
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        (FiniteVote::new(predictions, rho).unwrap(), labels)
    }

    /// Closed forms through the average vote g_i = Σ_h ρ_h·h(x_i) — an
    /// algebraically independent route to the same quantities.
    fn via_average_vote(v: &FiniteVote, labels: &[i8]) -> (f64, f64, f64) {
        let n = v.n_examples();
        let (mut gibbs, mut dis, mut joint) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let g: f64 = (0..v.n_votes())
                .map(|h| v.rho()[h] * f64::from(v.predictions()[h][i]))
                .sum();
            let y = f64::from(labels[i]);
            gibbs += (1.0 - y * g) / 2.0;
            dis += (1.0 - g * g) / 2.0;
            joint += ((1.0 - y * g) / 2.0).powi(2);
        }
        let m = n as f64;
        (gibbs / m, dis / m, joint / m)
    }

    #[test]
    fn constant_voter_examples() {
        let plus = vec![1, 1, 1];
        let minus = vec![-1, -1, -1];
        let v = FiniteVote::new(vec![plus.clone(), minus.clone()], vec![0.5, 0.5]).unwrap();
        let labels = [1, -1, 1];
        assert_eq!(fv_gibbs_risk(&v, &labels).unwrap(), 0.5);
        assert_eq!(fv_disagreement(&v), 0.5);
        assert_eq!(fv_joint_error(&v, &labels).unwrap(), 0.25);
        // uniform opposite constants tie every example; sign(0) → +1, so
        // the vote errs exactly on the −1 labels
        assert_eq!(fv_bayes_risk(&v, &labels).unwrap(), 1.0 / 3.0);
        // a perfect voter alone
        let perfect = FiniteVote::new(vec![vec![1, -1, 1]], vec![1.0]).unwrap();
        assert_eq!(fv_gibbs_risk(&perfect, &labels).unwrap(), 0.0);
        assert_eq!(fv_bayes_risk(&perfect, &labels).unwrap(), 0.0);
        // duplicated identical voters never disagree
        let dup = FiniteVote::new(vec![plus.clone(), plus], vec![0.3, 0.7]).unwrap();
        assert_eq!(fv_disagreement(&dup), 0.0);
    }

    #[test]
    fn weighted_three_voter_hand_sum() {
        let v = FiniteVote::new(
            vec![vec![1, 1, -1, -1], vec![1, -1, 1, -1], vec![-1, -1, -1, 1]],
            vec![0.5, 0.25, 0.25],
        )
        .unwrap();
        let labels = [1, -1, -1, 1];
        // per-voter error rates: 1/2, 1/2, 1/4
        let want = 0.5 * 0.5 + 0.25 * 0.5 + 0.25 * 0.25;
        assert_eq!(fv_gibbs_risk(&v, &labels).unwrap(), want);
    }

    #[test]
    fn matches_average_vote_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let n_votes = rng.gen_range(1..12);
            let n_examples = rng.gen_range(1..30);
            let (v, labels) = random_instance(&mut rng, n_votes, n_examples);
            let (g, d, e) = via_average_vote(&v, &labels);
            assert!((fv_gibbs_risk(&v, &labels).unwrap() - g).abs() <= 1e-13);
            assert!((fv_disagreement(&v) - d).abs() <= 1e-13);
            assert!((fv_joint_error(&v, &labels).unwrap() - e).abs() <= 1e-13);
        }
    }

    #[test]
    fn decomposition_and_vote_inequalities() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..200 {
            let (n_votes, n_examples) = (rng.gen_range(1..10), rng.gen_range(1..25));
            let (v, labels) = random_instance(&mut rng, n_votes, n_examples);
            let gibbs = fv_gibbs_risk(&v, &labels).unwrap();
            let dis = fv_disagreement(&v);
            let joint = fv_joint_error(&v, &labels).unwrap();
            assert!((gibbs - (0.5 * dis + joint)).abs() <= 1e-12);
            let bayes = fv_bayes_risk(&v, &labels).unwrap();
            assert!(bayes <= 2.0 * gibbs + 1e-12);
            if gibbs < 0.5 && dis < 0.5 {
                assert!(bayes <= c_bound(gibbs, dis).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn domain_disagreement_and_hdh() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let n_votes = rng.gen_range(1..10);
            let (m_s, m_t) = (rng.gen_range(1..25), rng.gen_range(1..25));
            let (v_s, _) = random_instance(&mut rng, n_votes, m_s);
            let (mut v_t, _) = random_instance(&mut rng, n_votes, m_t);
            v_t.rho = v_s.rho.clone();
            assert_eq!(fv_domain_disagreement(&v_s, &v_s).unwrap(), 0.0);
            assert_eq!(fv_hdh(&v_s, &v_s).unwrap(), 0.0);
            let dd = fv_domain_disagreement(&v_s, &v_t).unwrap();
            assert_eq!(dd, fv_domain_disagreement(&v_t, &v_s).unwrap());
            // the mean pairwise gap never exceeds the max pairwise gap
            assert!(dd <= fv_hdh(&v_s, &v_t).unwrap());
        }
        // a single voter only pairs with itself
        let s = FiniteVote::new(vec![vec![1, -1]], vec![1.0]).unwrap();
        let t = FiniteVote::new(vec![vec![-1, -1, 1]], vec![1.0]).unwrap();
        assert_eq!(fv_hdh(&s, &t).unwrap(), 0.0);
    }

    #[test]
    fn bendavid_rhs_bounds_target_risk() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for _ in 0..100 {
            let n_votes = rng.gen_range(1..8);
            let (m_s, m_t) = (rng.gen_range(1..20), rng.gen_range(1..20));
            let (v_s, labels_s) = random_instance(&mut rng, n_votes, m_s);
            let (mut v_t, labels_t) = random_instance(&mut rng, n_votes, m_t);
            v_t.rho = v_s.rho.clone();
            for h in 0..n_votes {
                let rhs = fv_bendavid_rhs(&v_s, &labels_s, &v_t, &labels_t, h).unwrap();
                let r_t = fv_voter_risk(&v_t, &labels_t, h).unwrap();
                assert!(rhs + 1e-12 >= r_t, "rhs {rhs} < target risk {r_t}");
            }
        }
        // a single perfect voter in both domains: every term vanishes
        let s = FiniteVote::new(vec![vec![1, -1]], vec![1.0]).unwrap();
        let rhs = fv_bendavid_rhs(&s, &[1, -1], &s, &[1, -1], 0).unwrap();
        assert_eq!(rhs, 0.0);
    }

    #[test]
    fn rejects_malformed_votes() {
        assert!(FiniteVote::new(vec![], vec![]).is_err());
        assert!(FiniteVote::new(vec![vec![]], vec![1.0]).is_err());
        assert!(FiniteVote::new(vec![vec![1], vec![1, -1]], vec![0.5, 0.5]).is_err());
        assert!(FiniteVote::new(vec![vec![0]], vec![1.0]).is_err());
        assert!(FiniteVote::new(vec![vec![1]], vec![0.5]).is_err());
        assert!(FiniteVote::new(vec![vec![1]], vec![-1.0]).is_err());
        assert!(FiniteVote::new(vec![vec![1], vec![-1]], vec![0.5, 0.5, 0.0]).is_err());
        let v = FiniteVote::new(vec![vec![1, -1]], vec![1.0]).unwrap();
        assert!(fv_gibbs_risk(&v, &[1]).is_err());
        assert!(fv_gibbs_risk(&v, &[1, 0]).is_err());
        assert!(fv_voter_risk(&v, &[1, -1], 1).is_err());
        let other = FiniteVote::new(vec![vec![1, -1], vec![1, 1]], vec![0.5, 0.5]).unwrap();
        assert!(fv_hdh(&v, &other).is_err());
        let reweighted = FiniteVote::new(vec![vec![1, -1]], vec![1.0]).unwrap();
        assert!(fv_hdh(&v, &reweighted).is_ok());
    }
}
