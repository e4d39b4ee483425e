//! Zero-evidence biometric recognition assessment.
//!
//! Quantifies how much identity information survives a privacy safeguard,
//! given mated and non-mated comparison scores. Scores are oracle calibrated
//! to log-likelihood ratios ([`calibration`]), then summarised as the
//! expected disclosure `D_ECE` in bits, the worst-case disclosure `log10 l`,
//! and a categorical tag ([`metrics`]). [`profile`] renders ECE curves,
//! [`io`] reads and writes score files and reports, and [`simulate`] builds
//! synthetic score sets with known LLRs.

pub mod calibration;
pub mod error;
pub mod io;
pub mod metrics;
mod numeric;
pub mod profile;
pub mod simulate;
pub mod types;

pub use calibration::pav_calibrate;
pub use error::{Error, Result, ScoreClass};
pub use metrics::{zebra, zebra_with_baselines};
pub use types::{
    validate_score_set, Baselines, CalibratedLLRs, EceProfile, Prior, ScoreSet, Tag, ZebraReport,
};
