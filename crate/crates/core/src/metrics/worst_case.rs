use std::f64::consts::LN_10;

use crate::error::{Error, Result};
use crate::types::{CalibratedLLRs, Tag};

/// Worst-case disclosure `log10 l = max |llr| / ln 10` over both pools.
pub fn worst_case_llr(cal: &CalibratedLLRs) -> f64 {
    cal.iter_all().map(f64::abs).fold(0.0, f64::max) / LN_10
}

/// Strength-of-evidence category for a worst-case magnitude. Bands are
/// closed on the left and open on the right; tag `0` needs exactly zero.
pub fn categorical_tag(log10_l: f64) -> Result<Tag> {
    if log10_l.is_nan() || log10_l < 0.0 {
        return Err(Error::NegativeMagnitude(log10_l));
    }
    Ok(match log10_l {
        0.0 => Tag::Zero,
        x if x < 1.0 => Tag::A,
        x if x < 2.0 => Tag::B,
        x if x < 4.0 => Tag::C,
        x if x < 5.0 => Tag::D,
        x if x < 6.0 => Tag::E,
        _ => Tag::F,
    })
}
