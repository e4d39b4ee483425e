//! Oracle calibration: Laplace augmentation followed by pool-adjacent-violators
//! isotonic regression, mapping raw scores to finite natural-log LLRs.
//!
//! Only the order of scores matters. Equal scores form a tie group that no
//! block boundary may split, so the result does not depend on input order.

use crate::error::ScoreClass;
use crate::types::{CalibratedLLRs, ScoreSet};

/// One entry of a pooled score sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PooledScore {
    pub score: f64,
    pub class: ScoreClass,
    /// Set for the two Laplace dummies.
    pub dummy: bool,
}

impl PooledScore {
    fn observed(score: f64, class: ScoreClass) -> Self {
        PooledScore {
            score,
            class,
            dummy: false,
        }
    }
}

/// A maximal run of the sorted pooled sequence sharing one fitted posterior.
///
/// `start_index..end_index` is a half-open range into the sorted sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PavBlock {
    pub start_index: usize,
    pub end_index: usize,
    pub n_mated: u64,
    pub n_nonmated: u64,
}

impl PavBlock {
    /// Fitted probability of the mated class.
    pub fn posterior(&self) -> f64 {
        self.n_mated as f64 / (self.n_mated + self.n_nonmated) as f64
    }

    pub fn len(&self) -> usize {
        self.end_index - self.start_index
    }

    pub fn is_empty(&self) -> bool {
        self.start_index == self.end_index
    }

    fn total(&self) -> u64 {
        self.n_mated + self.n_nonmated
    }

    /// `self.posterior() > next.posterior()`, decided on integer counts.
    fn violates(&self, next: &PavBlock) -> bool {
        u128::from(self.n_mated) * u128::from(next.total())
            > u128::from(next.n_mated) * u128::from(self.total())
    }

    fn absorb(&mut self, next: PavBlock) {
        self.end_index = next.end_index;
        self.n_mated += next.n_mated;
        self.n_nonmated += next.n_nonmated;
    }
}

/// Distance the dummies are placed beyond the observed extremes.
pub fn dummy_offset(min: f64, max: f64) -> f64 {
    if max == min {
        1.0
    } else {
        f64::max(1.0, 1e-6 * (max - min))
    }
}

/// Pools both classes, sorts ascending by score and brackets the sequence with
/// one mated dummy strictly below the minimum and one non-mated dummy strictly
/// above the maximum.
pub fn laplace_augment(scores: &ScoreSet) -> Vec<PooledScore> {
    let pooled = sort_pooled(pool(scores));
    let min = pooled.first().map(|p| p.score).expect("validated set");
    let max = pooled.last().map(|p| p.score).expect("validated set");
    let delta = dummy_offset(min, max);

    let mut low = min - delta;
    if low >= min {
        low = min.next_down();
    }
    let mut high = max + delta;
    if high <= max {
        high = max.next_up();
    }

    let mut out = Vec::with_capacity(pooled.len() + 2);
    out.push(PooledScore {
        score: low,
        class: ScoreClass::Mated,
        dummy: true,
    });
    out.extend(pooled);
    out.push(PooledScore {
        score: high,
        class: ScoreClass::Nonmated,
        dummy: true,
    });
    out
}

fn pool(scores: &ScoreSet) -> Vec<PooledScore> {
    scores
        .mated()
        .iter()
        .map(|&s| PooledScore::observed(s, ScoreClass::Mated))
        .chain(
            scores
                .nonmated()
                .iter()
                .map(|&s| PooledScore::observed(s, ScoreClass::Nonmated)),
        )
        .collect()
}

/// Sorts by score; within a tie, mated entries first. The tie order has no
/// effect on the fit because ties are pooled.
pub fn sort_pooled(mut pooled: Vec<PooledScore>) -> Vec<PooledScore> {
    pooled.sort_by(|a, b| {
        a.score
            .total_cmp(&b.score)
            .then_with(|| class_rank(a.class).cmp(&class_rank(b.class)))
    });
    pooled
}

fn class_rank(class: ScoreClass) -> u8 {
    match class {
        ScoreClass::Mated => 0,
        ScoreClass::Nonmated => 1,
    }
}

/// Isotonic regression of the class indicator (mated = 1) over a sequence
/// sorted ascending by score.
///
/// Entries with equal scores start in one block. Blocks are merged on a stack
/// whenever the previous block's posterior exceeds the current one; the
/// result is the unique least-squares non-decreasing fit.
pub fn pav_blocks(sorted: &[PooledScore]) -> Vec<PavBlock> {
    debug_assert!(sorted.windows(2).all(|w| w[0].score <= w[1].score));
    let mut stack: Vec<PavBlock> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut block = PavBlock {
            start_index: i,
            end_index: i,
            n_mated: 0,
            n_nonmated: 0,
        };
        while block.end_index < sorted.len() && sorted[block.end_index].score == sorted[i].score {
            match sorted[block.end_index].class {
                ScoreClass::Mated => block.n_mated += 1,
                ScoreClass::Nonmated => block.n_nonmated += 1,
            }
            block.end_index += 1;
        }
        i = block.end_index;

        while let Some(top) = stack.last() {
            if !top.violates(&block) {
                break;
            }
            let mut merged = stack.pop().unwrap();
            merged.absorb(block);
            block = merged;
        }
        stack.push(block);
    }
    stack
}

/// Per-entry posteriors from a block partition.
pub fn expand_posteriors(blocks: &[PavBlock]) -> Vec<f64> {
    let mut out = Vec::with_capacity(blocks.last().map_or(0, |b| b.end_index));
    for block in blocks {
        let p = block.posterior();
        out.extend(std::iter::repeat_n(p, block.len()));
    }
    out
}

/// Oracle-calibrates a score set.
///
/// The LLR of a block is its posterior log-odds minus the log-odds implied by
/// the augmented class proportions, `ln((n_a * N_b) / (n_b * N_a))`. Both
/// products are exact integers, so a block whose class ratio equals the
/// overall ratio gets an LLR of exactly zero.
pub fn pav_calibrate(scores: &ScoreSet) -> CalibratedLLRs {
    let augmented = laplace_augment(scores);
    let blocks = pav_blocks(&augmented);

    let total_mated = scores.mated().len() as u64 + 1;
    let total_nonmated = scores.nonmated().len() as u64 + 1;

    let mut mated_pairs = Vec::with_capacity(scores.mated().len());
    let mut nonmated_pairs = Vec::with_capacity(scores.nonmated().len());
    for block in &blocks {
        // Dummies keep every block mixed, so neither count is zero.
        debug_assert!(block.n_mated > 0 && block.n_nonmated > 0);
        let num = (block.n_mated * total_nonmated) as f64;
        let den = (block.n_nonmated * total_mated) as f64;
        let llr = (num / den).ln();
        for entry in &augmented[block.start_index..block.end_index] {
            if entry.dummy {
                continue;
            }
            match entry.class {
                ScoreClass::Mated => mated_pairs.push((entry.score, llr)),
                ScoreClass::Nonmated => nonmated_pairs.push((entry.score, llr)),
            }
        }
    }

    CalibratedLLRs::from_oracle(
        reorder(scores.mated(), mated_pairs),
        reorder(scores.nonmated(), nonmated_pairs),
    )
}

/// Maps sorted `(score, llr)` pairs back onto the caller's score order.
fn reorder(original: &[f64], mut sorted_pairs: Vec<(f64, f64)>) -> Vec<f64> {
    sorted_pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    original
        .iter()
        .map(|s| {
            let idx = sorted_pairs.partition_point(|p| p.0.total_cmp(s).is_lt());
            sorted_pairs[idx].1
        })
        .collect()
}
