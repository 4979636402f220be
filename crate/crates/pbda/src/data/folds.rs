//! Deterministic k-fold index splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Split `0..m` into `k` folds after a seeded shuffle.  Returns one
/// `(train_indices, test_indices)` pair per fold; the test folds partition
/// the index range, the first `m mod k` folds being one element larger.
pub fn kfold_split(m: usize, k: usize, seed: u64) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    if k < 2 {
        return Err(Error::arg(format!("need at least 2 folds, got {k}")));
    }
    if k > m {
        return Err(Error::arg(format!(
            "cannot split {m} examples into {k} folds"
        )));
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let base = m / k;
    let extra = m % k;
    let mut folds = Vec::with_capacity(k);
    let mut start = 0usize;
    for fold in 0..k {
        let size = base + usize::from(fold < extra);
        let test: Vec<usize> = order[start..start + size].to_vec();
        let train: Vec<usize> = order[..start]
            .iter()
            .chain(&order[start + size..])
            .copied()
            .collect();
        folds.push((train, test));
        start += size;
    }
    Ok(folds)
}
