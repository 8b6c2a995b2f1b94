//! `bernest`: exact Bernoulli proportion estimates from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure.

mod record;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use bernest_core::coverage::DEFAULT_DISCRETE_K;
use bernest_core::numfmt::{fmt_sig, round_sig};
use bernest_core::{
    credible_interval, discrete_interval, discrete_mean, discrete_posterior, posterior_mean,
    run_coverage, standard_estimate, ConfidenceLevel, CoverageReport, Error, Method,
    PosteriorDensity, SampleSummary,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use record::{Comparison, OutputRecord, CSV_HEADER, MACHINE_DIGITS};

#[derive(Parser)]
#[command(name = "bernest", version, about = "Exact Bayesian estimate and credible interval for a Bernoulli probability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean and interval for m successes in n trials.
    Estimate(EstimateArgs),
    /// Exact and standard intervals side by side.
    Compare(CompareArgs),
    /// Posterior density on a uniform grid over [0, 1], as CSV rows `x,e(x)`.
    Density(DensityArgs),
    /// Monte Carlo coverage of an interval method under the uniform prior.
    Coverage(CoverageArgs),
}

#[derive(Args)]
struct SampleArgs {
    /// Number of trials.
    #[arg(long)]
    n: u64,
    /// Number of successes.
    #[arg(long)]
    m: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimateMethod {
    Exact,
    Standard,
    Discrete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    sample: SampleArgs,
    /// Confidence level, strictly between 0 and 1.
    #[arg(long, default_value_t = 0.95)]
    c: f64,
    #[arg(long, value_enum, default_value_t = EstimateMethod::Exact)]
    method: EstimateMethod,
    /// Grid size for the discrete method.
    #[arg(long, default_value_t = DEFAULT_DISCRETE_K)]
    k: usize,
    /// Fixed z multiplier for the standard method.
    #[arg(long)]
    z: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    sample: SampleArgs,
    #[arg(long, default_value_t = 0.95)]
    c: f64,
    /// Fixed z multiplier for the standard method.
    #[arg(long)]
    z: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    sample: SampleArgs,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 201)]
    points: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct CoverageArgs {
    /// exact, standard, discrete or discrete:<k>.
    #[arg(long)]
    method: String,
    /// Grid size when --method is discrete.
    #[arg(long)]
    k: Option<usize>,
    /// Trials per simulated experiment.
    #[arg(long)]
    n: u64,
    #[arg(long)]
    c: f64,
    /// Number of simulated experiments.
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
}

fn estimate_record(
    s: SampleSummary,
    c: ConfidenceLevel,
    method: EstimateMethod,
    k: usize,
    z: Option<f64>,
) -> Result<OutputRecord, Error> {
    let base = |method: &str, mean: f64, lower: f64, upper: f64| OutputRecord {
        method: method.to_string(),
        n: s.n(),
        m: s.m(),
        c: c.value(),
        mean,
        lower,
        upper,
        k: None,
        sd: None,
        se: None,
        z: None,
    };
    Ok(match method {
        EstimateMethod::Exact => {
            let ci = credible_interval(s, c)?;
            base("exact", posterior_mean(s), ci.lower, ci.upper)
        }
        EstimateMethod::Standard => {
            let e = standard_estimate(s, c, z)?;
            OutputRecord {
                sd: Some(e.sd),
                se: Some(e.se),
                z: Some(e.z),
                ..base("standard", e.point, e.lower, e.upper)
            }
        }
        EstimateMethod::Discrete => {
            let d = discrete_posterior(s, k)?;
            let ci = discrete_interval(&d, c);
            OutputRecord {
                k: Some(k),
                ..base("discrete", discrete_mean(&d), ci.lower, ci.upper)
            }
        }
    })
}

fn sample_and_level(sample: &SampleArgs, c: f64) -> Result<(SampleSummary, ConfidenceLevel), Error> {
    Ok((SampleSummary::new(sample.n, sample.m)?, ConfidenceLevel::new(c)?))
}

fn run(cmd: Command, out: &mut impl Write) -> Result<(), RunError> {
    match cmd {
        Command::Estimate(a) => {
            let (s, c) = sample_and_level(&a.sample, a.c)?;
            let rec = estimate_record(s, c, a.method, a.k, a.z)?;
            match a.format {
                Format::Text => writeln!(out, "{}", rec.to_text())?,
                Format::Json => writeln!(out, "{}", rec.to_json())?,
                Format::Csv => writeln!(out, "{CSV_HEADER}\n{}", rec.to_csv_row())?,
            }
        }
        Command::Compare(a) => {
            let (s, c) = sample_and_level(&a.sample, a.c)?;
            let exact = estimate_record(s, c, EstimateMethod::Exact, 0, None)?;
            let standard = estimate_record(s, c, EstimateMethod::Standard, 0, a.z)?;
            let cmp = Comparison::new(exact, standard);
            match a.format {
                Format::Text => writeln!(out, "{}", cmp.to_text())?,
                Format::Json => writeln!(out, "{}", cmp.to_json())?,
                Format::Csv => writeln!(
                    out,
                    "{CSV_HEADER}\n{}\n{}",
                    cmp.exact.to_csv_row(),
                    cmp.standard.to_csv_row()
                )?,
            }
        }
        Command::Density(a) => {
            if a.points < 2 {
                return Err(Error::Domain("--points must be at least 2".into()).into());
            }
            let d = PosteriorDensity::new(SampleSummary::new(a.sample.n, a.sample.m)?)?;
            let last = (a.points - 1) as f64;
            for i in 0..a.points {
                let x = i as f64 / last;
                writeln!(
                    out,
                    "{},{}",
                    fmt_sig(x, MACHINE_DIGITS),
                    fmt_sig(d.density_at(x)?, MACHINE_DIGITS)
                )?;
            }
        }
        Command::Coverage(a) => {
            let mut method: Method = a.method.parse()?;
            if let (Method::Discrete { .. }, Some(k)) = (method, a.k) {
                if k < 1 {
                    return Err(Error::Domain("--k must be at least 1".into()).into());
                }
                method = Method::Discrete { k };
            }
            let c = ConfidenceLevel::new(a.c)?;
            let mut report: CoverageReport = run_coverage(method, a.n, c, a.trials, a.seed)?;
            report.coverage = round_sig(report.coverage, MACHINE_DIGITS);
            report.mean_width = round_sig(report.mean_width, MACHINE_DIGITS);
            match a.format {
                ReportFormat::Json => writeln!(out, "{}", report.to_json())?,
                ReportFormat::Csv => {
                    writeln!(out, "{}\n{}", CoverageReport::CSV_HEADER, report.to_csv_row())?
                }
            }
        }
    }
    Ok(())
}

enum RunError {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(RunError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(RunError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(RunError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 3 })
        }
    }
}
