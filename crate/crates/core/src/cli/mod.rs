//! Command-line front-end: CSV ingestion, report generation, plots and
//! Monte Carlo batches.

mod batch;
mod ingest;
mod plot;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use batch::{load_config, run_mc_batch, to_json_lines, BatchConfig};
pub use ingest::{ingest_csv, Ingested};
pub use plot::{plotting_position, quartile_line, render_histogram, render_qq, DEFAULT_BINS};
pub use report::{
    analyze, validate_alpha, AnalysisReport, AnalysisRequest, ModifiedSummary, Verdict, Verdicts, SCHEMA_VERSION,
    TOOL_VERSION,
};

use crate::error::{Error, Result};
use crate::sample::moments;

#[derive(Debug, Parser)]
#[command(name = "sngof", version, about = "Classical and skew-normal Shapiro-Wilk tests for mark data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the classical and modified tests on one CSV column and emit a JSON report.
    Test(TestArgs),
    /// Draw a histogram or normal Q-Q plot from a CSV column or a report's transformed data.
    Plot(PlotArgs),
    /// Run a batch of Monte Carlo scenarios from a TOML file; writes JSON lines.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct CsvInput {
    /// Column name (or 1-based index with --no-header).
    #[arg(long)]
    pub column: Option<String>,
    /// The file has no header row.
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    pub csv: PathBuf,
    #[command(flatten)]
    pub input: CsvInput,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Seed for the sign randomization (required; recorded in the report).
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub replications: usize,
    /// Report identifier; defaults to the file stem.
    #[arg(long)]
    pub dataset_id: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Histogram,
    Qq,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// CSV file to plot (with --column).
    #[arg(long, conflicts_with = "report", required_unless_present = "report")]
    pub csv: Option<PathBuf>,
    /// Report whose transformed (modified) data should be plotted.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub input: CsvInput,
    #[arg(long, value_enum, default_value_t = PlotKind::Histogram)]
    pub kind: PlotKind,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
    /// Omit the fitted normal curve from histograms.
    #[arg(long)]
    pub no_fit: bool,
    #[arg(long)]
    pub title: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub config: PathBuf,
    /// Write JSON lines here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, contents.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn column_of(input: &CsvInput) -> Result<&str> {
    input
        .column
        .as_deref()
        .ok_or_else(|| Error::Config("--column is required when reading a CSV file".into()))
}

fn dataset_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// The report as written by `test`: pretty JSON with a trailing newline.
pub fn report_json(report: &AnalysisReport) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    Ok(text)
}

pub fn run_test(args: &TestArgs) -> Result<AnalysisReport> {
    let column = column_of(&args.input)?;
    validate_alpha(args.alpha)?;
    let ingested = ingest_csv(&args.csv, column, !args.input.no_header)?;
    let req = AnalysisRequest {
        dataset_id: args.dataset_id.clone().unwrap_or_else(|| dataset_id(&args.csv)),
        column: column.to_string(),
        alpha: args.alpha,
        seed: args.seed,
        replications: args.replications,
    };
    let mut report = analyze(&ingested.sample, &req)?;
    let mut warnings = ingested.warnings;
    warnings.append(&mut report.warnings);
    report.warnings = warnings;
    match args.format {
        Format::Json => emit(args.out.as_deref(), &report_json(&report)?)?,
    }
    Ok(report)
}

pub fn run_plot(args: &PlotArgs) -> Result<()> {
    let (values, default_title) = match (&args.report, &args.csv) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let report: AnalysisReport = serde_json::from_str(&text)?;
            let modified = report.modified.ok_or_else(|| {
                Error::EmptyData(format!("{} has no modified-test results to plot", path.display()))
            })?;
            (modified.transformed, format!("Modified {} ({})", report.column, report.dataset_id))
        }
        (None, Some(path)) => {
            let column = column_of(&args.input)?;
            let ingested = ingest_csv(path, column, !args.input.no_header)?;
            for w in &ingested.warnings {
                eprintln!("warning: {w}");
            }
            (ingested.sample.into_values(), format!("{column} ({})", dataset_id(path)))
        }
        (None, None) => return Err(Error::Config("plot needs --csv or --report".into())),
    };
    let title = args.title.clone().unwrap_or(default_title);
    let svg = match args.kind {
        PlotKind::Histogram => {
            let fit = if args.no_fit || values.len() < 2 {
                None
            } else {
                let (mean, sd, _) = moments(&values);
                (sd > 0.0).then_some((mean, sd))
            };
            render_histogram(&values, fit, args.bins, &title)?
        }
        PlotKind::Qq => render_qq(&values, &title)?,
    };
    write_atomic(&args.out, svg.as_bytes())
}

pub fn run_simulate(args: &SimulateArgs) -> Result<()> {
    let rows = run_mc_batch(&args.config)?;
    emit(args.out.as_deref(), &to_json_lines(&rows)?)
}

/// Dispatches a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Test(args) => run_test(args).map(|_| ()),
        Command::Plot(args) => run_plot(args),
        Command::Simulate(args) => run_simulate(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
