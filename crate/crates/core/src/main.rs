//! `zebra` command-line front end.
//!
//! Exit codes: 0 success, 2 user error (bad flags, unreadable or malformed
//! input, invalid grid or spec, unwritable output), 1 internal failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use zebra::io::{
    parse_labeled_tsv, parse_split_pair, write_labeled_tsv, write_report, ReportFormat,
    ScoreFileFormat,
};
use zebra::profile::{build_profile, emit_csv, emit_svg, GridSpec, PlotStyle, Series};
use zebra::simulate::{simulate_scores, ScoreSimSpec};
use zebra::{pav_calibrate, zebra, zebra_with_baselines, ScoreSet, ZebraReport};

#[derive(Parser)]
#[command(
    name = "zebra",
    version,
    about = "Zero-evidence privacy disclosure assessment for biometric scores"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report (D_ECE, log10 l, tag) for one system.
    Evaluate(EvaluateArgs),
    /// Write ECE profiles as CSV and optionally SVG.
    Profile(ProfileArgs),
    /// Rank systems by expected privacy disclosure, most private first.
    Compare(CompareArgs),
    /// Write a synthetic two-Gaussian labeled score file.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Score file. For split-pair this is the mated file.
    #[arg(long = "scores", value_name = "FILE", required = true)]
    scores: Vec<PathBuf>,

    /// Score file layout.
    #[arg(long, value_name = "FORMAT", default_value = "labeled-tsv", value_parser = parse_format)]
    format: ScoreFileFormat,

    /// Non-mated score file for split-pair input, one per --scores, in order.
    #[arg(long, value_name = "FILE")]
    nonmated: Vec<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Also report Cllr and EER. These are contrast metrics only: they
    /// summarise recognition performance at one prior or one operating point
    /// and do not measure privacy disclosure.
    #[arg(long)]
    baselines: bool,

    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    input: InputArgs,

    /// CSV output path.
    #[arg(long, value_name = "OUT")]
    csv: PathBuf,

    /// SVG output path.
    #[arg(long, value_name = "OUT")]
    svg: Option<PathBuf>,

    /// Prior log10-odds grid as lo:hi:n.
    #[arg(
        long,
        value_name = "LO:HI:N",
        default_value = "-4:4:201",
        allow_hyphen_values = true
    )]
    grid: String,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, allow_negative_numbers = true)]
    mu_mated: f64,
    #[arg(long, allow_negative_numbers = true)]
    mu_nonmated: f64,
    #[arg(long, allow_negative_numbers = true)]
    sigma: f64,
    #[arg(long)]
    n_mated: usize,
    #[arg(long)]
    n_nonmated: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
}

fn parse_format(s: &str) -> Result<ScoreFileFormat, String> {
    s.parse()
        .map_err(|_| format!("expected labeled-tsv or split-pair, got {s:?}"))
}

enum Failure {
    User(String),
    Internal(String),
}

impl From<zebra::Error> for Failure {
    fn from(e: zebra::Error) -> Self {
        Failure::User(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::User(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::User(format!("{}: {e}", path.display())))
}

fn source_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_one(path: &Path, nonmated: Option<&Path>, format: ScoreFileFormat) -> CliResult<ScoreSet> {
    let id = source_id(path);
    let text = read(path)?;
    let parsed = match format {
        ScoreFileFormat::LabeledTsv => parse_labeled_tsv(&text, &id),
        ScoreFileFormat::SplitPair => {
            let other = nonmated.expect("checked by load_all");
            parse_split_pair(&text, &read(other)?, &id)
        }
    };
    parsed.map_err(|e| Failure::User(format!("{}: {e}", path.display())))
}

fn load_all(input: &InputArgs) -> CliResult<Vec<ScoreSet>> {
    match input.format {
        ScoreFileFormat::LabeledTsv if !input.nonmated.is_empty() => {
            return Err(Failure::User(
                "--nonmated is only valid with --format split-pair".into(),
            ))
        }
        ScoreFileFormat::SplitPair if input.nonmated.len() != input.scores.len() => {
            return Err(Failure::User(format!(
                "split-pair needs one --nonmated per --scores ({} vs {})",
                input.nonmated.len(),
                input.scores.len()
            )))
        }
        _ => {}
    }
    input
        .scores
        .par_iter()
        .enumerate()
        .map(|(i, path)| {
            load_one(
                path,
                input.nonmated.get(i).map(PathBuf::as_path),
                input.format,
            )
        })
        .collect()
}

fn parse_grid(s: &str) -> CliResult<GridSpec> {
    let bad = || Failure::User(format!("invalid grid {s:?}: expected lo:hi:n"));
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    Ok(GridSpec::new(lo, hi, n)?)
}

fn evaluate(args: &EvaluateArgs) -> CliResult<String> {
    if args.input.scores.len() != 1 {
        return Err(Failure::User("evaluate takes exactly one --scores".into()));
    }
    let set = load_all(&args.input)?.remove(0);
    let report = if args.baselines {
        zebra_with_baselines(&set)
    } else {
        zebra(&set)
    };
    let format = if args.json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    };
    Ok(write_report(&report, format))
}

fn profile(args: &ProfileArgs) -> CliResult<String> {
    let grid = parse_grid(&args.grid)?;
    let sets = load_all(&args.input)?;
    let computed = sets
        .par_iter()
        .map(|set| {
            let profile = build_profile(&pav_calibrate(set), grid)?;
            Ok((zebra(set), profile))
        })
        .collect::<zebra::Result<Vec<_>>>()?;
    let series: Vec<Series<'_>> = computed
        .iter()
        .map(|(report, profile)| Series::new(&report.source_id, profile).with_report(report))
        .collect();

    write(&args.csv, &emit_csv(&series)?)?;
    if let Some(svg_path) = &args.svg {
        let style = PlotStyle {
            title: Some("ECE profiles".into()),
            y_max: None,
        };
        write(svg_path, &emit_svg(&series, &style)?)?;
    }
    Ok(computed
        .iter()
        .map(|(report, _)| write_report(report, ReportFormat::Text))
        .collect())
}

/// Ascending D_ECE, then ascending log10 l, then source id.
fn rank(mut reports: Vec<ZebraReport>) -> Vec<ZebraReport> {
    reports.sort_by(|a, b| {
        a.d_ece
            .total_cmp(&b.d_ece)
            .then(a.log10_l.total_cmp(&b.log10_l))
            .then_with(|| a.source_id.cmp(&b.source_id))
    });
    reports
}

fn compare(args: &CompareArgs) -> CliResult<String> {
    if args.input.scores.len() < 2 {
        return Err(Failure::User("compare needs at least 2 systems".into()));
    }
    let sets = load_all(&args.input)?;
    let reports = rank(sets.par_iter().map(zebra).collect());
    let mut out = String::from("rank\tsource_id\td_ece\tlog10_l\ttag\n");
    for (i, r) in reports.iter().enumerate() {
        out.push_str(&format!(
            "{}\t{}\t{:.4}\t{:.4}\t{}\n",
            i + 1,
            r.source_id,
            r.d_ece,
            r.log10_l,
            r.tag
        ));
    }
    Ok(out)
}

fn simulate(args: &SimulateArgs) -> CliResult<String> {
    let spec = ScoreSimSpec {
        mu_mated: args.mu_mated,
        mu_nonmated: args.mu_nonmated,
        sigma: args.sigma,
        n_mated: args.n_mated,
        n_nonmated: args.n_nonmated,
        seed: args.seed,
    };
    let set = simulate_scores(&spec)?;
    write(&args.out, &write_labeled_tsv(&set))?;
    Ok(String::new())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| match &cli.command {
        Command::Evaluate(a) => evaluate(a),
        Command::Profile(a) => profile(a),
        Command::Compare(a) => compare(a),
        Command::Simulate(a) => simulate(a),
    })
    .unwrap_or_else(|_| Err(Failure::Internal("unexpected internal failure".into())));

    match result {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(Failure::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
