//! Contrast metrics. Neither Cllr (ECE at a single prior) nor EER (a single
//! operating point) measures privacy disclosure; they are provided for
//! comparison with conventional evaluations.

use std::f64::consts::LN_2;

use crate::calibration::{laplace_augment, pav_blocks, sort_pooled};
use crate::numeric::{compensated_sum, softplus};
use crate::types::{CalibratedLLRs, ScoreSet};

/// Log-likelihood-ratio cost in bits:
/// `(<log2(1 + 1/a)> + <log2(1 + b)>) / 2`.
pub fn cllr(cal: &CalibratedLLRs) -> f64 {
    let mated =
        compensated_sum(cal.mated_llr().iter().map(|&l| softplus(-l))) / cal.n_mated() as f64;
    let nonmated =
        compensated_sum(cal.nonmated_llr().iter().map(|&l| softplus(l))) / cal.n_nonmated() as f64;
    0.5 * (mated + nonmated) / LN_2
}

/// Equal error rate on the ROC convex hull.
///
/// PAV blocks over the raw pooled scores (no Laplace dummies) are the hull
/// vertices. Walking the blocks in ascending posterior order moves the
/// operating point from (false alarm 1, miss 0) to (0, 1); the EER is where
/// the segment crossing `miss = false alarm` meets that line.
pub fn eer(scores: &ScoreSet) -> f64 {
    let pooled: Vec<_> = laplace_augment(scores)
        .into_iter()
        .filter(|p| !p.dummy)
        .collect();
    let blocks = pav_blocks(&sort_pooled(pooled));
    let n_mated = scores.mated().len() as f64;
    let n_nonmated = scores.nonmated().len() as f64;

    let (mut cum_mated, mut cum_nonmated) = (0u64, 0u64);
    let mut prev = (1.0, 0.0);
    for block in blocks {
        cum_mated += block.n_mated;
        cum_nonmated += block.n_nonmated;
        let pmiss = cum_mated as f64 / n_mated;
        let pfa = (n_nonmated - cum_nonmated as f64) / n_nonmated;
        if pmiss >= pfa {
            let (pfa0, pmiss0): (f64, f64) = prev;
            if pmiss == pfa {
                return pmiss;
            }
            let below = pfa0 - pmiss0;
            let above = pmiss - pfa;
            let s = below / (below + above);
            return pfa0 + s * (pfa - pfa0);
        }
        prev = (pfa, pmiss);
    }
    unreachable!("the last hull vertex has miss rate 1 and false-alarm rate 0")
}
