//! Privacy disclosure metrics over calibrated LLRs.
//!
//! All internal LLRs are natural logs. Base 10 only appears in
//! [`worst_case_llr`] and the tag boundaries, base 2 only in reported bits.

mod baselines;
mod disclosure;
mod ece;
mod worst_case;

pub use baselines::{cllr, eer};
pub use disclosure::{
    d_ece_checked, d_ece_closed_form, d_ece_numeric, z_kernel, Checked, MiscalibratedInput,
    D_ECE_MAX, QUADRATURE_EPSILON,
};
pub use ece::{ece, perfect_privacy_ece};
pub use worst_case::{categorical_tag, worst_case_llr};

pub(crate) use ece::EceEvaluator;

use crate::calibration::pav_calibrate;
use crate::types::{Baselines, ScoreSet, ZebraReport};

/// Calibrates `scores` and reports `(D_ECE, log10 l, tag)`.
pub fn zebra(scores: &ScoreSet) -> ZebraReport {
    let cal = pav_calibrate(scores);
    let d_ece = d_ece_closed_form(&cal);
    let log10_l = worst_case_llr(&cal);
    let tag = categorical_tag(log10_l).expect("magnitude is non-negative");
    ZebraReport {
        source_id: scores.source_id().to_string(),
        d_ece,
        log10_l,
        tag,
        baselines: None,
    }
}

/// [`zebra`] plus the Cllr and EER contrast metrics.
pub fn zebra_with_baselines(scores: &ScoreSet) -> ZebraReport {
    let cal = pav_calibrate(scores);
    let mut report = zebra(scores);
    report.baselines = Some(Baselines {
        cllr: cllr(&cal),
        eer: eer(scores),
    });
    report
}
