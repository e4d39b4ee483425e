//! Domain types shared by calibration, metrics, profiles and I/O.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ScoreClass};

/// Raw classifier scores split into mated (class A) and non-mated (class B)
/// pools.
///
/// Both pools are non-empty and every score is finite. Duplicates are kept.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreSet {
    mated: Vec<f64>,
    nonmated: Vec<f64>,
    source_id: String,
}

impl ScoreSet {
    /// Validates raw score lists. Input order is preserved.
    pub fn new(mated: Vec<f64>, nonmated: Vec<f64>, source_id: impl Into<String>) -> Result<Self> {
        check_pool(&mated, ScoreClass::Mated)?;
        check_pool(&nonmated, ScoreClass::Nonmated)?;
        Ok(ScoreSet {
            mated,
            nonmated,
            source_id: source_id.into(),
        })
    }

    pub fn mated(&self) -> &[f64] {
        &self.mated
    }

    pub fn nonmated(&self) -> &[f64] {
        &self.nonmated
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn len(&self) -> usize {
        self.mated.len() + self.nonmated.len()
    }

    /// Always false for a validated set.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn with_source_id(self, source_id: impl Into<String>) -> Self {
        ScoreSet {
            source_id: source_id.into(),
            ..self
        }
    }
}

/// Equivalent to [`ScoreSet::new`].
pub fn validate_score_set(
    raw_mated: &[f64],
    raw_nonmated: &[f64],
    source_id: &str,
) -> Result<ScoreSet> {
    ScoreSet::new(raw_mated.to_vec(), raw_nonmated.to_vec(), source_id)
}

fn check_pool(scores: &[f64], class: ScoreClass) -> Result<()> {
    if scores.is_empty() {
        return Err(Error::EmptyClass(class));
    }
    if let Some(index) = scores.iter().position(|s| !s.is_finite()) {
        return Err(Error::NonFiniteScore { class, index });
    }
    Ok(())
}

/// Natural-log likelihood ratios, one per original score.
///
/// Values produced by [`crate::calibration::pav_calibrate`] are oracle
/// calibrated; values supplied through [`CalibratedLLRs::from_llrs`] are
/// taken at face value and flagged as such.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibratedLLRs {
    mated_llr: Vec<f64>,
    nonmated_llr: Vec<f64>,
    oracle: bool,
}

impl CalibratedLLRs {
    pub(crate) fn from_oracle(mated_llr: Vec<f64>, nonmated_llr: Vec<f64>) -> Self {
        CalibratedLLRs {
            mated_llr,
            nonmated_llr,
            oracle: true,
        }
    }

    /// Wraps externally computed LLRs (nats). Both pools must be non-empty and
    /// finite.
    pub fn from_llrs(mated_llr: Vec<f64>, nonmated_llr: Vec<f64>) -> Result<Self> {
        check_pool(&mated_llr, ScoreClass::Mated)?;
        check_pool(&nonmated_llr, ScoreClass::Nonmated)?;
        Ok(CalibratedLLRs {
            mated_llr,
            nonmated_llr,
            oracle: false,
        })
    }

    pub fn mated_llr(&self) -> &[f64] {
        &self.mated_llr
    }

    pub fn nonmated_llr(&self) -> &[f64] {
        &self.nonmated_llr
    }

    pub fn n_mated(&self) -> usize {
        self.mated_llr.len()
    }

    pub fn n_nonmated(&self) -> usize {
        self.nonmated_llr.len()
    }

    /// True when the LLRs came out of PAV calibration.
    pub fn is_oracle_calibrated(&self) -> bool {
        self.oracle
    }

    pub fn iter_all(&self) -> impl Iterator<Item = f64> + '_ {
        self.mated_llr
            .iter()
            .chain(self.nonmated_llr.iter())
            .copied()
    }
}

/// Prior probability that the same-identity proposition holds.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Prior(f64);

impl Prior {
    pub fn new(pi: f64) -> Result<Self> {
        if pi > 0.0 && pi < 1.0 {
            Ok(Prior(pi))
        } else {
            Err(Error::InvalidPrior(pi))
        }
    }

    /// Prior from base-10 log odds, `pi = 10^x / (1 + 10^x)`.
    pub fn from_log10_odds(x: f64) -> Result<Self> {
        Prior::new(1.0 / (1.0 + 10f64.powf(-x)))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `ln(pi / (1 - pi))`.
    pub fn logit(self) -> f64 {
        (self.0 / (1.0 - self.0)).ln()
    }
}

/// Table 1 strength-of-evidence category for the worst-case disclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    /// `l = 1`: flat posterior.
    Zero,
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Zero => "0",
            Tag::A => "A",
            Tag::B => "B",
            Tag::C => "C",
            Tag::D => "D",
            Tag::E => "E",
            Tag::F => "F",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "0" => Tag::Zero,
            "A" => Tag::A,
            "B" => Tag::B,
            "C" => Tag::C,
            "D" => Tag::D,
            "E" => Tag::E,
            "F" => Tag::F,
            other => return Err(Error::Report(format!("unknown tag {other:?}"))),
        })
    }
}

impl Serialize for Tag {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// ECE sampled over a grid of prior log10-odds.
#[derive(Debug, Clone, PartialEq)]
pub struct EceProfile {
    pub grid: Vec<f64>,
    /// Adversary ECE in bits.
    pub ece: Vec<f64>,
    /// Zero-evidence ECE in bits.
    pub perfect_privacy_ece: Vec<f64>,
}

impl EceProfile {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Contrast metrics that are not privacy measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Baselines {
    /// Bits.
    pub cllr: f64,
    /// Fraction in `[0, 1]`.
    pub eer: f64,
}

/// The `(D_ECE, log10 l, tag)` tuple for one evaluated system.
#[derive(Debug, Clone, PartialEq)]
pub struct ZebraReport {
    pub source_id: String,
    /// Expected privacy disclosure in bits.
    pub d_ece: f64,
    /// Worst-case disclosure as a base-10 log-LR magnitude.
    pub log10_l: f64,
    pub tag: Tag,
    pub baselines: Option<Baselines>,
}

impl ZebraReport {
    /// `(D_ECE, log10 l, tag)` rendered to two decimals.
    pub fn tuple_display(&self) -> String {
        format!("({:.2}, {:.2}, {})", self.d_ece, self.log10_l, self.tag)
    }
}
