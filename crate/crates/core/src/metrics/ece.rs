use std::f64::consts::LN_2;

use crate::numeric::{compensated_sum, softplus, Histogram};
use crate::types::{CalibratedLLRs, Prior};

/// Empirical cross-entropy in bits at prior `prior`.
///
/// Evaluated in the log domain: the mated term `log2(1 + (1-pi)/(a pi))` is
/// `softplus(-logit(pi) - llr) / ln 2`, and the non-mated term is
/// `softplus(llr + logit(pi)) / ln 2`. Neither overflows for large `|llr|`.
pub fn ece(cal: &CalibratedLLRs, prior: Prior) -> f64 {
    let pi = prior.value();
    let logit = prior.logit();
    let mated = compensated_sum(cal.mated_llr().iter().map(|&l| softplus(-logit - l)))
        / cal.n_mated() as f64;
    let nonmated = compensated_sum(cal.nonmated_llr().iter().map(|&l| softplus(l + logit)))
        / cal.n_nonmated() as f64;
    (pi * mated + (1.0 - pi) * nonmated) / LN_2
}

/// ECE of zero-evidence scores (every LR equal to one), i.e. the binary
/// entropy of `pi` in bits.
pub fn perfect_privacy_ece(prior: Prior) -> f64 {
    let pi = prior.value();
    let logit = prior.logit();
    (pi * softplus(-logit) + (1.0 - pi) * softplus(logit)) / LN_2
}

/// Repeated ECE evaluation over many priors. LLRs are collapsed to distinct
/// values first, which PAV output has few of.
#[derive(Debug, Clone)]
pub(crate) struct EceEvaluator {
    mated: Histogram,
    nonmated: Histogram,
}

impl EceEvaluator {
    pub(crate) fn new(cal: &CalibratedLLRs) -> Self {
        EceEvaluator {
            mated: Histogram::new(cal.mated_llr()),
            nonmated: Histogram::new(cal.nonmated_llr()),
        }
    }

    /// ECE in bits for prior `pi` with `logit = ln(pi / (1 - pi))`.
    pub(crate) fn ece(&self, pi: f64, logit: f64) -> f64 {
        let mated = self.mated.mean(|l| softplus(-logit - l));
        let nonmated = self.nonmated.mean(|l| softplus(l + logit));
        (pi * mated + (1.0 - pi) * nonmated) / LN_2
    }

    pub(crate) fn perfect_privacy(pi: f64, logit: f64) -> f64 {
        (pi * softplus(-logit) + (1.0 - pi) * softplus(logit)) / LN_2
    }
}
