//! Score files and evaluation reports.
//!
//! Two score layouts are supported, selected explicitly by the caller:
//! labeled TSV (`<label> <score>` per line, label `mated` or `nonmated`) and
//! split pair (one file per class, one score per line). Blank lines and lines
//! starting with `#` are skipped. CRLF input is accepted; output uses LF.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{Baselines, ScoreSet, Tag, ZebraReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreFileFormat {
    LabeledTsv,
    SplitPair,
}

impl FromStr for ScoreFileFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "labeled-tsv" => Ok(ScoreFileFormat::LabeledTsv),
            "split-pair" => Ok(ScoreFileFormat::SplitPair),
            other => Err(Error::Parse {
                line: 0,
                reason: format!("unknown score file format {other:?}"),
            }),
        }
    }
}

impl fmt::Display for ScoreFileFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreFileFormat::LabeledTsv => "labeled-tsv",
            ScoreFileFormat::SplitPair => "split-pair",
        })
    }
}

/// Non-blank, non-comment lines with their 1-based physical line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_score(token: &str, line: usize) -> Result<f64> {
    token.parse::<f64>().map_err(|_| Error::Parse {
        line,
        reason: format!("invalid score {token:?}"),
    })
}

pub fn parse_labeled_tsv(text: &str, source_id: &str) -> Result<ScoreSet> {
    let mut mated = Vec::new();
    let mut nonmated = Vec::new();
    for (line, content) in content_lines(text) {
        let mut fields = content.split_whitespace();
        let (Some(label), Some(score), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse {
                line,
                reason: "expected `<label> <score>`".into(),
            });
        };
        let target = if label.eq_ignore_ascii_case("mated") {
            &mut mated
        } else if label.eq_ignore_ascii_case("nonmated") {
            &mut nonmated
        } else {
            return Err(Error::Parse {
                line,
                reason: format!("unknown label {label:?}"),
            });
        };
        target.push(parse_score(score, line)?);
    }
    ScoreSet::new(mated, nonmated, source_id)
}

fn parse_score_column(text: &str) -> Result<Vec<f64>> {
    content_lines(text)
        .map(|(line, content)| parse_score(content, line))
        .collect()
}

pub fn parse_split_pair(
    mated_text: &str,
    nonmated_text: &str,
    source_id: &str,
) -> Result<ScoreSet> {
    ScoreSet::new(
        parse_score_column(mated_text)?,
        parse_score_column(nonmated_text)?,
        source_id,
    )
}

/// Labeled TSV, mated scores first, in shortest round-trip notation.
pub fn write_labeled_tsv(scores: &ScoreSet) -> String {
    let mut out = String::new();
    for s in scores.mated() {
        out.push_str(&format!("mated\t{s:?}\n"));
    }
    for s in scores.nonmated() {
        out.push_str(&format!("nonmated\t{s:?}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Serialize, Deserialize)]
struct Display2dp {
    d_ece_2dp: String,
    log10_l_2dp: String,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    source_id: String,
    d_ece: f64,
    log10_l: f64,
    tag: Tag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cllr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eer: Option<f64>,
    display: Display2dp,
}

pub fn write_report(report: &ZebraReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => {
            let mut line = format!(
                "{}: (D_ECE={:.2}, log10(l)={:.2}, tag={})",
                report.source_id, report.d_ece, report.log10_l, report.tag
            );
            if let Some(b) = report.baselines {
                line.push_str(&format!(
                    " [contrast metrics, not privacy measures: Cllr={:.4} bits, EER={:.2}%]",
                    b.cllr,
                    100.0 * b.eer
                ));
            }
            line.push('\n');
            line
        }
        ReportFormat::Json => {
            let json = ReportJson {
                source_id: report.source_id.clone(),
                d_ece: report.d_ece,
                log10_l: report.log10_l,
                tag: report.tag,
                cllr: report.baselines.map(|b| b.cllr),
                eer: report.baselines.map(|b| b.eer),
                display: Display2dp {
                    d_ece_2dp: format!("{:.2}", report.d_ece),
                    log10_l_2dp: format!("{:.2}", report.log10_l),
                },
            };
            let mut s = serde_json::to_string_pretty(&json).expect("report fields are finite");
            s.push('\n');
            s
        }
    }
}

/// Reads a JSON report. The display block is ignored; full-precision fields
/// are authoritative.
pub fn parse_report_json(text: &str) -> Result<ZebraReport> {
    let json: ReportJson = serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))?;
    let baselines = match (json.cllr, json.eer) {
        (Some(cllr), Some(eer)) => Some(Baselines { cllr, eer }),
        (None, None) => None,
        _ => return Err(Error::Report("cllr and eer must appear together".into())),
    };
    Ok(ZebraReport {
        source_id: json.source_id,
        d_ece: json.d_ece,
        log10_l: json.log10_l,
        tag: json.tag,
        baselines,
    })
}
