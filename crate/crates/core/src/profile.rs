//! ECE profiles over prior log10-odds and their CSV / SVG renderings.

use std::f64::consts::LN_10;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::EceEvaluator;
use crate::types::{CalibratedLLRs, EceProfile, ZebraReport};

/// Uniform grid of `n` prior log10-odds values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            lo: -4.0,
            hi: 4.0,
            n: 201,
        }
    }
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        let spec = GridSpec { lo, hi, n };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if self.lo >= self.hi {
            return Err(Error::InvalidGrid(format!(
                "lower bound {} is not below upper bound {}",
                self.lo, self.hi
            )));
        }
        if self.n < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Grid abscissae. The `i`-th point depends only on `i / (n - 1)`, so grids
    /// that share a point agree on it exactly.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i == self.n - 1 {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * (i as f64 / last)
                }
            })
            .collect()
    }
}

/// Adversary and zero-evidence ECE at every grid point.
pub fn build_profile(cal: &CalibratedLLRs, grid: GridSpec) -> Result<EceProfile> {
    grid.validate()?;
    let eval = EceEvaluator::new(cal);
    let points = grid.points();
    let (ece, perfect_privacy_ece) = points
        .par_iter()
        .map(|&x| {
            let pi = 1.0 / (1.0 + 10f64.powf(-x));
            let logit = x * LN_10;
            (
                eval.ece(pi, logit),
                EceEvaluator::perfect_privacy(pi, logit),
            )
        })
        .unzip();
    Ok(EceProfile {
        grid: points,
        ece,
        perfect_privacy_ece,
    })
}

/// One curve to render, optionally with the ZEBRA tuple for the legend.
#[derive(Debug, Clone, Copy)]
pub struct Series<'a> {
    pub source_id: &'a str,
    pub profile: &'a EceProfile,
    pub report: Option<&'a ZebraReport>,
}

impl<'a> Series<'a> {
    pub fn new(source_id: &'a str, profile: &'a EceProfile) -> Self {
        Series {
            source_id,
            profile,
            report: None,
        }
    }

    pub fn with_report(mut self, report: &'a ZebraReport) -> Self {
        self.report = Some(report);
        self
    }
}

fn shared_grid<'a>(series: &[Series<'a>]) -> Result<&'a EceProfile> {
    let first = series
        .first()
        .ok_or_else(|| Error::InvalidGrid("no profiles to render".into()))?
        .profile;
    if first.grid.len() < 2 {
        return Err(Error::InvalidGrid("profile has fewer than 2 points".into()));
    }
    for s in series {
        let p = s.profile;
        if p.grid != first.grid
            || p.ece.len() != p.grid.len()
            || p.perfect_privacy_ece != first.perfect_privacy_ece
        {
            return Err(Error::GridMismatch);
        }
    }
    Ok(first)
}

fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV with header `log10_odds,perfect_privacy_ece,<source_id>...`, one row
/// per grid point, numbers to 17 significant digits.
pub fn emit_csv(series: &[Series<'_>]) -> Result<String> {
    let base = shared_grid(series)?;
    let mut out = String::from("log10_odds,perfect_privacy_ece");
    for s in series {
        out.push(',');
        out.push_str(&csv_field(s.source_id));
    }
    out.push('\n');
    for (i, &x) in base.grid.iter().enumerate() {
        out.push_str(&fmt_g17(x));
        out.push(',');
        out.push_str(&fmt_g17(base.perfect_privacy_ece[i]));
        for s in series {
            out.push(',');
            out.push_str(&fmt_g17(s.profile.ece[i]));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses [`emit_csv`] output back into `(source_id, profile)` pairs.
pub fn parse_csv(text: &str) -> Result<Vec<(String, EceProfile)>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing header".into(),
    })?;
    let names = split_csv_line(header.trim_end_matches('\r'));
    if names.len() < 2 || names[0] != "log10_odds" || names[1] != "perfect_privacy_ece" {
        return Err(Error::Parse {
            line: 1,
            reason: "unexpected header".into(),
        });
    }
    let ids = &names[2..];
    let mut grid = Vec::new();
    let mut pp = Vec::new();
    let mut columns = vec![Vec::new(); ids.len()];
    for (idx, line) in lines {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(Error::Parse {
                line: idx + 1,
                reason: format!("expected {} fields, found {}", names.len(), fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|e| Error::Parse {
                line: idx + 1,
                reason: format!("bad number {s:?}: {e}"),
            })
        };
        grid.push(parse(fields[0])?);
        pp.push(parse(fields[1])?);
        for (col, f) in columns.iter_mut().zip(&fields[2..]) {
            col.push(parse(f)?);
        }
    }
    Ok(ids
        .iter()
        .cloned()
        .zip(columns)
        .map(|(id, ece)| {
            (
                id,
                EceProfile {
                    grid: grid.clone(),
                    ece,
                    perfect_privacy_ece: pp.clone(),
                },
            )
        })
        .collect())
}

fn split_csv_line(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut field = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match (c, quoted) {
            ('"', true) if chars.peek() == Some(&'"') => {
                field.push('"');
                chars.next();
            }
            ('"', _) => quoted = !quoted,
            (',', false) => out.push(std::mem::take(&mut field)),
            _ => field.push(c),
        }
    }
    out.push(field);
    out
}

/// Rendering options for [`emit_svg`]. The canvas is fixed at 640x400.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlotStyle {
    pub title: Option<String>,
    /// Upper end of the ECE axis; defaults to the larger of 1 bit and the
    /// highest plotted value.
    pub y_max: Option<f64>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff00ff", "#ff7f0e", "#9467bd", "#8c564b", "#17becf",
];

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Standalone SVG: the zero-evidence curve in black plus one polyline per
/// series, over prior log10-odds. Legend entries carry the ZEBRA tuple when
/// a report is attached.
pub fn emit_svg(series: &[Series<'_>], style: &PlotStyle) -> Result<String> {
    let base = shared_grid(series)?;
    let x_lo = base.grid[0];
    let x_hi = *base.grid.last().unwrap();
    let data_max = series
        .iter()
        .flat_map(|s| s.profile.ece.iter())
        .chain(base.perfect_privacy_ece.iter())
        .copied()
        .fold(0.0, f64::max);
    let y_max = style.y_max.unwrap_or_else(|| data_max.max(1.0));

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + (1.0 - (y / y_max).clamp(0.0, 1.0)) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 640 400" width="640" height="400">"#
    );
    let _ = writeln!(
        w,
        r#"<rect x="0" y="0" width="640" height="400" fill="white"/>"#
    );
    if let Some(title) = &style.title {
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="18" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
            LEFT + plot_w / 2.0,
            xml_escape(title)
        );
    }

    // Axes and ticks.
    let _ = writeln!(
        w,
        r##"<g stroke="#444444" stroke-width="1" fill="none"><line x1="{l:.2}" y1="{b:.2}" x2="{r:.2}" y2="{b:.2}"/><line x1="{l:.2}" y1="{t:.2}" x2="{l:.2}" y2="{b:.2}"/></g>"##,
        l = LEFT,
        r = LEFT + plot_w,
        t = TOP,
        b = TOP + plot_h
    );
    let _ = writeln!(
        w,
        r#"<g font-family="sans-serif" font-size="11" fill="black">"#
    );
    let mut tick = x_lo.ceil();
    while tick <= x_hi {
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            sx(tick),
            TOP + plot_h + 16.0,
            tick
        );
        tick += 1.0;
    }
    let y_steps = 5;
    for k in 0..=y_steps {
        let y = y_max * k as f64 / y_steps as f64;
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.2}</text>"#,
            LEFT - 6.0,
            sy(y) + 4.0,
            y
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">prior log10 odds</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        w,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">ECE (bits)</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    let _ = writeln!(w, "</g>");

    let polyline = |w: &mut String, values: &[f64], color: &str| {
        let pts: Vec<String> = base
            .grid
            .iter()
            .zip(values)
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            w,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
    };
    polyline(w, &base.perfect_privacy_ece, "black");
    for (i, s) in series.iter().enumerate() {
        polyline(w, &s.profile.ece, PALETTE[i % PALETTE.len()]);
    }

    // Legend, top right.
    let _ = writeln!(
        w,
        r#"<g font-family="sans-serif" font-size="11" fill="black">"#
    );
    let entries = std::iter::once(("black", "perfect privacy".to_string())).chain(
        series.iter().enumerate().map(|(i, s)| {
            let label = match s.report {
                Some(r) => format!("{} {}", s.source_id, r.tuple_display()),
                None => s.source_id.to_string(),
            };
            (PALETTE[i % PALETTE.len()], label)
        }),
    );
    for (row, (color, label)) in entries.enumerate() {
        let y = TOP + 12.0 + 16.0 * row as f64;
        let x = LEFT + plot_w - 250.0;
        let _ = writeln!(
            w,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            x,
            y - 4.0,
            x + 20.0,
            y - 4.0,
            x + 26.0,
            y,
            xml_escape(&label)
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}
