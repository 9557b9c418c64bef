//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 domain error,
//! 4 convergence or fit failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    self, interior_means, log_spaced, log_spaced_per_decade, ErrorRecord, GridSpec, RateMetric, DEFAULT_MEANS,
    POINTS_PER_DECADE,
};
use crate::approximation::{approx_median, exact_median_special, gamma_median_approx};
use crate::error::Error;
use crate::params::{BetaParams, Offset};
use crate::solver::{beta_median_exact, gamma_median_exact, SolverConfig};
use crate::special::reg_inc_beta;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CONVERGENCE: i32 = 4;

/// Default offsets for the absolute error curves.
const ABSERR_OFFSETS: [f64; 6] = [0.0, 0.25, 0.3, 1.0 / 3.0, 0.4, 0.5];

#[derive(Debug, Parser)]
#[command(
    name = "beta-median",
    version,
    about = "Beta distribution median: closed-form approximation, exact oracle and error grids"
)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Median of Beta(a, b).
    #[command(allow_negative_numbers = true)]
    Median {
        #[arg(long, value_parser = finite)]
        a: f64,
        #[arg(long, value_parser = finite)]
        b: f64,
        #[arg(long, value_enum, default_value_t = MedianMethod::Exact)]
        method: MedianMethod,
        /// Offset for the approx method; accepts 1/3.
        #[arg(long, value_parser = offset_value, default_value = "1/3")]
        d: f64,
    },
    /// Regularized incomplete beta I_x(a, b).
    #[command(allow_negative_numbers = true)]
    Cdf {
        #[arg(long, value_parser = finite)]
        a: f64,
        #[arg(long, value_parser = finite)]
        b: f64,
        #[arg(long, value_parser = finite)]
        x: f64,
    },
    /// Median of the unit-scale Gamma(a) distribution.
    #[command(name = "gamma-median", allow_negative_numbers = true)]
    GammaMedian {
        #[arg(long, value_parser = finite)]
        a: f64,
        #[arg(long, value_enum, default_value_t = GammaMethod::Exact)]
        method: GammaMethod,
    },
    /// Relative error along fixed means (CSV).
    #[command(name = "grid-relerr", allow_negative_numbers = true)]
    GridRelerr {
        /// Comma-separated means.
        #[arg(long, value_delimiter = ',', value_parser = finite)]
        p: Vec<f64>,
        #[command(flatten)]
        shapes: ShapeRange<1, 1024>,
        /// Comma-separated offsets; accepts 1/3.
        #[arg(long, value_delimiter = ',', value_parser = offset_value)]
        d: Vec<f64>,
    },
    /// Relative error over all means with the smaller shape fixed (CSV).
    #[command(name = "grid-means", allow_negative_numbers = true)]
    GridMeans {
        #[arg(long, value_parser = finite)]
        min_shape: f64,
        /// Number of means i/(N + 1), i = 1..N.
        #[arg(long, default_value_t = 199)]
        p_points: usize,
        #[arg(long, value_parser = offset_value, default_value = "1/3")]
        d: f64,
    },
    /// Log scaled absolute error for several offsets (CSV).
    #[command(name = "curve-abserr", allow_negative_numbers = true)]
    CurveAbserr {
        #[arg(long, value_parser = finite, default_value_t = 0.01)]
        p: f64,
        #[arg(long, value_delimiter = ',', value_parser = offset_value)]
        d: Vec<f64>,
        #[command(flatten)]
        shapes: ShapeRange<1, 4096>,
    },
    /// Tail probability at the approximate median (CSV).
    #[command(name = "grid-tail", allow_negative_numbers = true)]
    GridTail {
        #[arg(long, value_parser = finite, default_value_t = 1.0)]
        shape_min: f64,
        #[arg(long, value_parser = finite, default_value_t = 64.0)]
        shape_max: f64,
        #[arg(long, default_value_t = 13)]
        points: usize,
        #[arg(long, default_value_t = 99)]
        p_points: usize,
    },
    /// Log-log slope of the approximation error along a fixed mean.
    #[command(name = "rate-fit", allow_negative_numbers = true)]
    RateFit {
        #[arg(long, value_parser = finite)]
        p: f64,
        #[arg(long, value_parser = offset_value)]
        d: f64,
        #[arg(long, value_parser = finite, default_value_t = 8.0)]
        a_min: f64,
        #[arg(long, value_parser = finite, default_value_t = 4096.0)]
        a_max: f64,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Metric::Abs)]
        metric: Metric,
    },
}

#[derive(Debug, Args)]
struct ShapeRange<const LO: u32, const HI: u32> {
    #[arg(long, value_parser = finite, default_value_t = LO as f64)]
    a_min: f64,
    #[arg(long, value_parser = finite, default_value_t = HI as f64)]
    a_max: f64,
    /// Number of log-spaced shapes (default: 25 per decade).
    #[arg(long)]
    points: Option<usize>,
}

impl<const LO: u32, const HI: u32> ShapeRange<LO, HI> {
    fn values(&self) -> crate::Result<Vec<f64>> {
        match self.points {
            Some(n) => log_spaced(self.a_min, self.a_max, n),
            None => log_spaced_per_decade(self.a_min, self.a_max, POINTS_PER_DECADE),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MedianMethod {
    Exact,
    Approx,
    Special,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GammaMethod {
    Exact,
    Approx,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Metric {
    Abs,
    Standardized,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a finite number"))
    }
}

/// Parses an offset: the literal `1/3` maps to the nearest double to one
/// third, anything else is read as a decimal.
pub fn offset_value(s: &str) -> Result<f64, String> {
    if s.trim() == "1/3" {
        Ok(1.0 / 3.0)
    } else {
        finite(s)
    }
}

/// Failure from a subcommand, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Numeric(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Exit code for a numeric error.
pub fn exit_code(err: &Error) -> i32 {
    match err.root_cause() {
        Error::Domain { .. } => EXIT_DOMAIN,
        _ => EXIT_CONVERGENCE,
    }
}

/// Runs the CLI on `argv` (program name first) with the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Same as [`run`] with explicit output streams.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };

    let result = match &cli.out {
        Some(path) => File::create(path).map_err(Failure::from).and_then(|f| {
            let mut w = BufWriter::new(f);
            dispatch(&cli.command, &mut w)?;
            w.flush()?;
            Ok(())
        }),
        None => dispatch(&cli.command, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_IO
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    let cfg = SolverConfig::<f64>::default();
    match *cmd {
        Command::Median { a, b, method, d } => {
            let params = BetaParams::new(a, b)?;
            let m = match method {
                MedianMethod::Exact => beta_median_exact(params, &cfg)?,
                MedianMethod::Approx => approx_median(params, Offset::new(d)?)?,
                MedianMethod::Special => exact_median_special(params).ok_or(Error::Domain {
                    name: "(a, b)",
                    value: f64::NAN,
                    reason: "no closed form: needs a = 1, b = 1 or a = b",
                })?,
            };
            writeln!(out, "{m}")?;
        }
        Command::Cdf { a, b, x } => {
            writeln!(out, "{}", reg_inc_beta(x, a, b)?)?;
        }
        Command::GammaMedian { a, method } => {
            let m = match method {
                GammaMethod::Exact => gamma_median_exact(a, &cfg)?,
                GammaMethod::Approx => gamma_median_approx(a)?,
            };
            writeln!(out, "{m}")?;
        }
        Command::GridRelerr {
            ref p,
            ref shapes,
            ref d,
        } => {
            let p = if p.is_empty() {
                DEFAULT_MEANS.to_vec()
            } else {
                p.clone()
            };
            let d = if d.is_empty() { vec![1.0 / 3.0] } else { d.clone() };
            let grid = GridSpec::new(p, shapes.values()?, offsets(&d)?)?;
            emit(&analysis::relative_error_curves(&grid, &cfg)?, out)?;
        }
        Command::GridMeans { min_shape, p_points, d } => {
            let p_grid = interior_means(p_points);
            emit(
                &analysis::relative_error_over_means(min_shape, &p_grid, Offset::new(d)?, &cfg)?,
                out,
            )?;
        }
        Command::CurveAbserr { p, ref d, ref shapes } => {
            let d = if d.is_empty() {
                ABSERR_OFFSETS.to_vec()
            } else {
                d.clone()
            };
            let rows = analysis::scaled_abs_error_curves(p, &shapes.values()?, &offsets(&d)?, &cfg)?;
            emit(&rows, out)?;
        }
        Command::GridTail {
            shape_min,
            shape_max,
            points,
            p_points,
        } => {
            let shapes = if points == 1 {
                vec![shape_min]
            } else {
                log_spaced(shape_min, shape_max, points)?
            };
            let rows = analysis::tail_probability_grid(&shapes, &interior_means(p_points), &cfg)?;
            emit(&rows, out)?;
        }
        Command::RateFit {
            p,
            d,
            a_min,
            a_max,
            points,
            metric,
        } => {
            let metric = match metric {
                Metric::Abs => RateMetric::AbsoluteError,
                Metric::Standardized => RateMetric::StandardizedError,
            };
            let fit = analysis::rate_fit_with(metric, p, a_min, a_max, points, Offset::new(d)?, &cfg)?;
            writeln!(out, "d,p,slope,intercept,max_abs_residual,points")?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                fit.d.get(),
                fit.p,
                fit.slope,
                fit.intercept,
                fit.max_abs_residual,
                fit.points
            )?;
        }
    }
    Ok(())
}

fn offsets(values: &[f64]) -> crate::Result<Vec<Offset<f64>>> {
    values.iter().map(|&d| Offset::new(d)).collect()
}

fn emit(rows: &[ErrorRecord<f64>], out: &mut dyn Write) -> Result<(), Failure> {
    analysis::write_csv(rows, out)?;
    Ok(())
}
