//! Expected privacy disclosure: the area between the zero-evidence ECE curve
//! and the adversary ECE curve, integrated uniformly over the prior.

use std::f64::consts::LN_2;

use rayon::prelude::*;

use super::ece::EceEvaluator;
use crate::numeric::{compensated_sum, CompensatedSum};
use crate::types::CalibratedLLRs;

/// Full disclosure, `1 / (2 ln 2)` bits.
pub const D_ECE_MAX: f64 = 1.0 / (2.0 * LN_2);

/// The quadrature covers priors in `[eps, 1 - eps]`.
pub const QUADRATURE_EPSILON: f64 = 1e-8;

const SERIES_RADIUS: f64 = 1e-3;

/// `Z(x) = ((x-3)(x-1) + 2 ln x) / (4 (x-1)^2)` for `x > 0`.
///
/// Near the removable singularity at `x = 1` the truncated series
/// `e/6 - e^2/8 + e^3/10` with `e = x - 1` is used instead.
pub fn z_kernel(x: f64) -> f64 {
    z_parts(x - 1.0, x.ln())
}

/// `Z(e^t)`.
fn z_of_log(t: f64) -> f64 {
    z_parts(t.exp_m1(), t)
}

/// `e = x - 1`, `ln_x = ln x`. Away from `x = 1` this uses the rearrangement
/// `Z = (1 - 2u + 2 u^2 ln x) / 4` with `u = 1/(x-1)`, which reaches exactly
/// `1/4` once `x` overflows.
fn z_parts(e: f64, ln_x: f64) -> f64 {
    if e.abs() < SERIES_RADIUS {
        e * (1.0 / 6.0 + e * (-1.0 / 8.0 + e / 10.0))
    } else if e.is_infinite() {
        0.25
    } else {
        let u = 1.0 / e;
        (1.0 - 2.0 * u + 2.0 * u * u * ln_x) / 4.0
    }
}

/// Closed-form D_ECE in bits:
/// `(<Z(a)> over mated LRs + <Z(1/b)> over non-mated LRs) / ln 2`.
///
/// For oracle-calibrated inputs the result lies in `[0, D_ECE_MAX]`. Other
/// LLRs can produce a negative value, which is returned as is and logged; see
/// [`d_ece_checked`].
pub fn d_ece_closed_form(cal: &CalibratedLLRs) -> f64 {
    let checked = d_ece_checked(cal);
    if let Some(warning) = checked.warning {
        log::warn!("{warning}");
    }
    checked.value
}

/// Returned when D_ECE comes out negative, which cannot happen for oracle
/// calibrated LLRs.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("miscalibrated input: D_ECE = {d_ece} bits is negative; LLRs were not oracle calibrated")]
pub struct MiscalibratedInput {
    pub d_ece: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checked {
    pub value: f64,
    pub warning: Option<MiscalibratedInput>,
}

/// Closed-form D_ECE together with the miscalibration flag.
pub fn d_ece_checked(cal: &CalibratedLLRs) -> Checked {
    let mated =
        compensated_sum(cal.mated_llr().iter().map(|&l| z_of_log(l))) / cal.n_mated() as f64;
    let nonmated =
        compensated_sum(cal.nonmated_llr().iter().map(|&l| z_of_log(-l))) / cal.n_nonmated() as f64;
    let value = (mated + nonmated) / LN_2;
    let warning = (value < 0.0).then_some(MiscalibratedInput { d_ece: value });
    Checked { value, warning }
}

/// D_ECE by direct quadrature of the ECE gap over the prior.
///
/// Composite Simpson over the prior log-odds `u = ln(pi / (1 - pi))`, with
/// `d pi = pi (1 - pi) du`, on `pi` in `[eps, 1 - eps]`. The substitution
/// puts the nodes where the integrand bends, near both ends of the prior
/// range. The excluded tails contribute at most
/// `2 * int_0^eps H(pi) d pi ~ eps^2 log2(1/eps) ~ 3e-15` bits.
///
/// `n_points` is raised to at least 64 and to the next odd number.
pub fn d_ece_numeric(cal: &CalibratedLLRs, n_points: usize) -> f64 {
    let n = {
        let n = n_points.max(64);
        if n.is_multiple_of(2) {
            n + 1
        } else {
            n
        }
    };
    let eval = EceEvaluator::new(cal);
    let bound = ((1.0 - QUADRATURE_EPSILON) / QUADRATURE_EPSILON).ln();
    let h = 2.0 * bound / (n - 1) as f64;

    let integrand: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let u = -bound + i as f64 * h;
            let pi = 1.0 / (1.0 + (-u).exp());
            let jacobian = pi * (1.0 - pi);
            (EceEvaluator::perfect_privacy(pi, u) - eval.ece(pi, u)) * jacobian
        })
        .collect();

    let mut acc = CompensatedSum::default();
    for (i, &f) in integrand.iter().enumerate() {
        let w = if i == 0 || i == n - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc.add(w * f);
    }
    acc.value() * h / 3.0
}
