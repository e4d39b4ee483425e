//! Independent oracles and random fixtures shared by the integration tests.

#![allow(dead_code)]

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use zebra::ScoreSet;

pub const MAX_ORACLE_LEN: usize = 14;

#[derive(Debug, PartialEq)]
pub struct TooLarge(pub usize);

/// Exact isotonic fit of the mated indicator by exhaustive search.
///
/// Sorts `(score, is_mated)` by score, enumerates every partition into
/// contiguous blocks that does not split equal scores, keeps partitions whose
/// block means are non-decreasing, and returns the per-entry fitted values of
/// the one with least squared error. All comparisons are on exact rationals.
pub fn pav_brute_force_oracle(pooled: &[(f64, bool)]) -> Result<Vec<f64>, TooLarge> {
    if pooled.len() > MAX_ORACLE_LEN {
        return Err(TooLarge(pooled.len()));
    }
    if pooled.is_empty() {
        return Ok(Vec::new());
    }
    let mut sorted = pooled.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

    let cuts: Vec<usize> = (1..sorted.len())
        .filter(|&i| sorted[i - 1].0 != sorted[i].0)
        .collect();

    // (start, end, mated, len) per block
    type Blocks = Vec<(usize, usize, i64, i64)>;
    let mut best: Option<(Ratio<i64>, Blocks)> = None;
    for mask in 0u32..(1u32 << cuts.len()) {
        let mut bounds = vec![0];
        for (bit, &c) in cuts.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                bounds.push(c);
            }
        }
        bounds.push(sorted.len());

        let blocks: Blocks = bounds
            .windows(2)
            .map(|w| {
                let mated = sorted[w[0]..w[1]].iter().filter(|e| e.1).count() as i64;
                (w[0], w[1], mated, (w[1] - w[0]) as i64)
            })
            .collect();

        // mated_i / n_i <= mated_j / n_j
        let monotone = blocks
            .windows(2)
            .all(|w| w[0].2 * w[1].3 <= w[1].2 * w[0].3);
        if !monotone {
            continue;
        }
        let sse = blocks
            .iter()
            .fold(Ratio::from_integer(0), |acc, &(_, _, a, n)| {
                acc + Ratio::new(a * (n - a), n)
            });
        if best.as_ref().is_none_or(|(b, _)| sse < *b) {
            best = Some((sse, blocks));
        }
    }

    let (_, blocks) = best.expect("the single-block partition is always monotone");
    let mut out = Vec::with_capacity(sorted.len());
    for (start, end, a, n) in blocks {
        for _ in start..end {
            out.push(a as f64 / n as f64);
        }
    }
    Ok(out)
}

/// EER by sweeping every threshold, taking the lower convex hull of the
/// resulting (false alarm, miss) points, and intersecting it with the
/// diagonal.
pub fn eer_brute_force(mated: &[f64], nonmated: &[f64]) -> f64 {
    let mut thresholds: Vec<f64> = mated.iter().chain(nonmated).copied().collect();
    thresholds.push(f64::INFINITY);
    thresholds.push(f64::NEG_INFINITY);
    let mut points: Vec<(f64, f64)> = thresholds
        .iter()
        .map(|&t| {
            // Accept when score >= t.
            let pmiss = mated.iter().filter(|&&s| s < t).count() as f64 / mated.len() as f64;
            let pfa = nonmated.iter().filter(|&&s| s >= t).count() as f64 / nonmated.len() as f64;
            (pfa, pmiss)
        })
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    points.dedup();

    let mut hull: Vec<(f64, f64)> = Vec::new();
    for p in points {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }

    for w in hull.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        let d0 = y0 - x0;
        let d1 = y1 - x1;
        if d0 == 0.0 {
            return x0;
        }
        if d1 == 0.0 {
            return x1;
        }
        if (d0 > 0.0) != (d1 > 0.0) {
            let s = d0 / (d0 - d1);
            return x0 + s * (x1 - x0);
        }
    }
    panic!("hull never meets the diagonal");
}

/// ECE straight from the LR form `log2(1 + (1-pi)/(a pi))`, usable for
/// moderate LLRs only.
pub fn ece_direct(mated_llr: &[f64], nonmated_llr: &[f64], pi: f64) -> f64 {
    let a: f64 = mated_llr
        .iter()
        .map(|l| (1.0 + (1.0 - pi) / (l.exp() * pi)).log2())
        .sum::<f64>()
        / mated_llr.len() as f64;
    let b: f64 = nonmated_llr
        .iter()
        .map(|l| (1.0 + l.exp() * pi / (1.0 - pi)).log2())
        .sum::<f64>()
        / nonmated_llr.len() as f64;
    pi * a + (1.0 - pi) * b
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random pooled sequence with scores on a coarse lattice so ties occur.
pub fn random_pooled(rng: &mut StdRng, max_len: usize) -> Vec<(f64, bool)> {
    let len = rng.random_range(1..=max_len);
    let levels = rng.random_range(1..=8);
    (0..len)
        .map(|_| (rng.random_range(0..levels) as f64, rng.random_bool(0.5)))
        .collect()
}

/// Random score set. Scores are multiples of 0.01 with a random class
/// separation, so ties and overlaps both occur.
pub fn random_score_set(rng: &mut StdRng, min_n: usize, max_n: usize) -> ScoreSet {
    let log_uniform = |rng: &mut StdRng| {
        let lo = (min_n as f64).ln();
        let hi = (max_n as f64).ln();
        (rng.random_range(lo..=hi)).exp().round() as usize
    };
    let n_mated = log_uniform(rng).clamp(min_n, max_n);
    let n_nonmated = log_uniform(rng).clamp(min_n, max_n);
    let gap = rng.random_range(0.0..6.0);
    let spread = rng.random_range(0.2..2.0);
    let mut draw = |mu: f64, n: usize| -> Vec<f64> {
        (0..n)
            .map(|_| {
                // Sum of uniforms: cheap bell-shaped noise.
                let z: f64 = (0..4).map(|_| rng.random_range(-1.0..1.0)).sum::<f64>() * 0.866;
                ((mu + spread * z) * 100.0).round() / 100.0
            })
            .collect()
    };
    let mated = draw(gap, n_mated);
    let nonmated = draw(0.0, n_nonmated);
    ScoreSet::new(mated, nonmated, "random").unwrap()
}

/// Distance in units in the last place.
pub fn ulps(a: f64, b: f64) -> u64 {
    let key = |x: f64| {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    };
    key(a).abs_diff(key(b))
}
