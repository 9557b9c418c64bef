//! Grid evaluations of the approximation error.
//!
//! Every row pairs an approximate median with the exact one from the
//! solver. Rows are independent and evaluated in parallel; output order is
//! fixed by the input grids, never by scheduling.

use std::io::Write;

use rayon::prelude::*;

use crate::approximation::approx_median;
use crate::error::{Error, Result};
use crate::params::{BetaParams, Offset};
use crate::scalar::{lit, one_third, to_f64, Real};
use crate::solver::{beta_median_exact, SolverConfig};
use crate::special::reg_inc_beta;

/// Default means p = a/(a + b) for the relative error grid.
pub const DEFAULT_MEANS: [f64; 6] = [0.499, 0.49, 0.45, 0.35, 0.25, 0.001];

/// Default density of log-spaced shape grids.
pub const POINTS_PER_DECADE: usize = 25;

/// CSV header shared by every grid.
pub const CSV_HEADER: [&str; 10] = [
    "a",
    "b",
    "p",
    "d",
    "approx",
    "exact",
    "rel_err",
    "log_scaled_abs_err",
    "tail_prob",
    "underflow",
];

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_spaced<T: Real>(lo: T, hi: T, n: usize) -> Result<Vec<T>> {
    if !(lo > T::zero() && hi > lo && hi.is_finite()) {
        return Err(Error::domain("lo", to_f64(lo), "log grid needs 0 < lo < hi"));
    }
    if n < 2 {
        return Err(Error::domain("points", n as f64, "log grid needs at least 2 points"));
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    let last = T::from_usize(n - 1).unwrap();
    let mut out: Vec<T> = (0..n)
        .map(|i| (l0 + (l1 - l0) * T::from_usize(i).unwrap() / last).exp())
        .collect();
    out[0] = lo;
    out[n - 1] = hi;
    Ok(out)
}

/// Log-spaced grid with at least `per_decade` points per factor of ten.
pub fn log_spaced_per_decade<T: Real>(lo: T, hi: T, per_decade: usize) -> Result<Vec<T>> {
    if !(lo > T::zero() && hi > lo) {
        return Err(Error::domain("lo", to_f64(lo), "log grid needs 0 < lo < hi"));
    }
    let decades = to_f64((hi / lo).log10());
    let n = (decades * per_decade as f64 - 1e-9).ceil() as usize + 1;
    log_spaced(lo, hi, n.max(2))
}

/// `n` evenly spaced means i/(n + 1), i = 1..=n, strictly inside (0, 1).
pub fn interior_means<T: Real>(n: usize) -> Vec<T> {
    let denom = T::from_usize(n + 1).unwrap();
    (1..=n).map(|i| T::from_usize(i).unwrap() / denom).collect()
}

/// Shapes with mean `p` and the smaller shape fixed at `min_shape`:
/// Beta(s, s(1 − p)/p) for p ≤ 1/2, Beta(s·p/(1 − p), s) otherwise.
pub fn params_for_mean<T: Real>(min_shape: T, p: T) -> Result<BetaParams<T>> {
    check_mean(p)?;
    let one = T::one();
    if p <= lit(0.5) {
        BetaParams::new(min_shape, min_shape * (one - p) / p)
    } else {
        BetaParams::new(min_shape * p / (one - p), min_shape)
    }
}

fn check_mean<T: Real>(p: T) -> Result<()> {
    if !(p > T::zero() && p < T::one()) {
        return Err(Error::domain("p", to_f64(p), "mean must lie in (0, 1)"));
    }
    Ok(())
}

/// Means, shapes and offsets spanned by a relative error grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<T> {
    p_values: Vec<T>,
    shape_values: Vec<T>,
    d_values: Vec<Offset<T>>,
}

impl<T: Real> GridSpec<T> {
    pub fn new(p_values: Vec<T>, shape_values: Vec<T>, d_values: Vec<Offset<T>>) -> Result<Self> {
        if p_values.is_empty() || shape_values.is_empty() || d_values.is_empty() {
            return Err(Error::domain("grid", 0.0, "grid lists must be non-empty"));
        }
        for &p in &p_values {
            check_mean(p)?;
        }
        if !(shape_values[0] > T::zero()) {
            return Err(Error::domain("shape", to_f64(shape_values[0]), "shapes must be > 0"));
        }
        if let Some(w) = shape_values.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(Error::domain(
                "shape",
                to_f64(w[1]),
                "shapes must be strictly increasing",
            ));
        }
        Ok(GridSpec {
            p_values,
            shape_values,
            d_values,
        })
    }

    /// The default relative error grid: the six default means, a ∈ [1, 1024] at 25
    /// points per decade, d = 1/3.
    pub fn relative_error_default() -> Self {
        GridSpec {
            p_values: DEFAULT_MEANS.iter().map(|&p| lit(p)).collect(),
            shape_values: log_spaced_per_decade(T::one(), lit(1024.0), POINTS_PER_DECADE).unwrap(),
            d_values: vec![Offset::third()],
        }
    }

    pub fn p_values(&self) -> &[T] {
        &self.p_values
    }

    pub fn shape_values(&self) -> &[T] {
        &self.shape_values
    }

    pub fn d_values(&self) -> &[Offset<T>] {
        &self.d_values
    }

    pub fn len(&self) -> usize {
        self.p_values.len() * self.shape_values.len() * self.d_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord<T> {
    pub a: T,
    pub b: T,
    /// Distribution mean the row was generated for.
    pub p: T,
    pub d: Offset<T>,
    pub approx: T,
    pub exact: T,
    /// (approx − exact)/exact, signed.
    pub rel_err: T,
    /// ln(|approx − exact| / p); `None` when the difference is exactly zero.
    pub log_scaled_abs_err: Option<T>,
    /// I_approx(a, b).
    pub tail_prob: T,
    /// Set when approx == exact in floating point.
    pub underflow: bool,
}

impl<T: Real> ErrorRecord<T> {
    /// Evaluates a single point.
    pub fn evaluate(params: BetaParams<T>, p: T, d: Offset<T>, cfg: &SolverConfig<T>) -> Result<Self> {
        let run = || -> Result<Self> {
            let approx = approx_median(params, d)?;
            let exact = beta_median_exact(params, cfg)?;
            let tail_prob = reg_inc_beta(approx, params.a(), params.b())?;
            let diff = approx - exact;
            let underflow = diff == T::zero();
            Ok(ErrorRecord {
                a: params.a(),
                b: params.b(),
                p,
                d,
                approx,
                exact,
                rel_err: diff / exact,
                log_scaled_abs_err: (!underflow).then(|| (diff.abs() / p).ln()),
                tail_prob,
                underflow,
            })
        };
        run().map_err(|e| at_point(params, e))
    }

    /// |approx − exact|.
    pub fn abs_err(&self) -> T {
        (self.approx - self.exact).abs()
    }
}

fn at_point<T: Real>(params: BetaParams<T>, source: Error) -> Error {
    Error::GridPoint {
        a: to_f64(params.a()),
        b: to_f64(params.b()),
        source: Box::new(source),
    }
}

fn evaluate_all<T: Real>(
    points: Vec<(BetaParams<T>, T, Offset<T>)>,
    cfg: &SolverConfig<T>,
) -> Result<Vec<ErrorRecord<T>>> {
    points
        .into_par_iter()
        .map(|(params, p, d)| ErrorRecord::evaluate(params, p, d, cfg))
        .collect()
}

/// Relative error along each fixed mean: a runs over the grid's shapes and
/// b = a(1 − p)/p. Rows are ordered by (d, p, a) in grid order.
pub fn relative_error_curves<T: Real>(grid: &GridSpec<T>, cfg: &SolverConfig<T>) -> Result<Vec<ErrorRecord<T>>> {
    let mut points = Vec::with_capacity(grid.len());
    for &d in &grid.d_values {
        for &p in &grid.p_values {
            for &a in &grid.shape_values {
                let params = BetaParams::new(a, a * (T::one() - p) / p)?;
                points.push((params, p, d));
            }
        }
    }
    evaluate_all(points, cfg)
}

/// Relative error across means with the smaller shape held at `min_shape`.
pub fn relative_error_over_means<T: Real>(
    min_shape: T,
    p_grid: &[T],
    d: Offset<T>,
    cfg: &SolverConfig<T>,
) -> Result<Vec<ErrorRecord<T>>> {
    if !(min_shape > d.get()) {
        return Err(Error::domain(
            "min_shape",
            to_f64(min_shape),
            "must exceed the offset d",
        ));
    }
    let points = p_grid
        .iter()
        .map(|&p| Ok((params_for_mean(min_shape, p)?, p, d)))
        .collect::<Result<Vec<_>>>()?;
    evaluate_all(points, cfg)
}

/// Absolute error curves at one mean p < 1/2 for several offsets, ordered by
/// (d, a). Rows whose error is exactly zero are flagged as underflow.
pub fn scaled_abs_error_curves<T: Real>(
    p: T,
    shape_values: &[T],
    d_values: &[Offset<T>],
    cfg: &SolverConfig<T>,
) -> Result<Vec<ErrorRecord<T>>> {
    if !(p > T::zero() && p < lit(0.5)) {
        return Err(Error::domain("p", to_f64(p), "scaled error curves need 0 < p < 1/2"));
    }
    let grid = GridSpec::new(vec![p], shape_values.to_vec(), d_values.to_vec())?;
    let max_d = d_values.iter().map(|d| d.get()).fold(T::zero(), T::max);
    if !(grid.shape_values[0] > max_d) {
        return Err(Error::domain(
            "shape",
            to_f64(grid.shape_values[0]),
            "smallest shape must exceed every offset",
        ));
    }
    relative_error_curves(&grid, cfg)
}

/// Tail probability I_m(a, b) at m = (a − 1/3)/(a + b − 2/3) for every
/// (smaller shape, mean) pair, ordered by shape then mean.
pub fn tail_probability_grid<T: Real>(
    shape_values: &[T],
    p_values: &[T],
    cfg: &SolverConfig<T>,
) -> Result<Vec<ErrorRecord<T>>> {
    if let Some(&s) = shape_values.iter().find(|&&s| !(s > one_third())) {
        return Err(Error::domain("shape", to_f64(s), "tail grid needs shapes > 1/3"));
    }
    let mut points = Vec::with_capacity(shape_values.len() * p_values.len());
    for &s in shape_values {
        for &p in p_values {
            points.push((params_for_mean(s, p)?, p, Offset::third()));
        }
    }
    evaluate_all(points, cfg)
}

/// Error measure regressed by [`rate_fit_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateMetric {
    /// |approx − exact|.
    AbsoluteError,
    /// |approx − exact| divided by the Beta(a, b) standard deviation.
    StandardizedError,
}

/// Least-squares line through (ln a, ln error).
#[derive(Debug, Clone, PartialEq)]
pub struct RateFitResult<T> {
    pub d: Offset<T>,
    pub p: T,
    pub slope: T,
    pub intercept: T,
    pub max_abs_residual: T,
    /// Points that entered the fit.
    pub points: usize,
    /// The evaluated rows, including any excluded for underflow.
    pub records: Vec<ErrorRecord<T>>,
}

/// Minimum number of usable points in a rate fit.
pub const MIN_FIT_POINTS: usize = 5;

/// Convergence rate of |m(a, b; d) − m(a, b)| along b = a(1 − p)/p.
pub fn rate_fit<T: Real>(
    p: T,
    a_min: T,
    a_max: T,
    n_points: usize,
    d: Offset<T>,
    cfg: &SolverConfig<T>,
) -> Result<RateFitResult<T>> {
    rate_fit_with(RateMetric::AbsoluteError, p, a_min, a_max, n_points, d, cfg)
}

pub fn rate_fit_with<T: Real>(
    metric: RateMetric,
    p: T,
    a_min: T,
    a_max: T,
    n_points: usize,
    d: Offset<T>,
    cfg: &SolverConfig<T>,
) -> Result<RateFitResult<T>> {
    if !(p > T::zero() && p < lit(0.5)) {
        return Err(Error::domain("p", to_f64(p), "rate fit needs 0 < p < 1/2"));
    }
    if !(a_min >= T::one() && a_max > a_min) {
        return Err(Error::domain(
            "a_min",
            to_f64(a_min),
            "rate fit needs 1 <= a_min < a_max",
        ));
    }
    if n_points < MIN_FIT_POINTS {
        return Err(Error::domain(
            "points",
            n_points as f64,
            "rate fit needs at least 5 points",
        ));
    }
    let shapes = log_spaced(a_min, a_max, n_points)?;
    let grid = GridSpec::new(vec![p], shapes, vec![d])?;
    let records = relative_error_curves(&grid, cfg)?;

    let (xs, ys): (Vec<T>, Vec<T>) = records
        .iter()
        .filter(|r| !r.underflow)
        .map(|r| {
            let err = match metric {
                RateMetric::AbsoluteError => r.abs_err(),
                RateMetric::StandardizedError => r.abs_err() / beta_sd(r.a, r.b),
            };
            (r.a.ln(), err.ln())
        })
        .unzip();
    if xs.len() < MIN_FIT_POINTS {
        return Err(Error::Fit(format!(
            "only {} of {} points have a nonzero error",
            xs.len(),
            records.len()
        )));
    }
    let (slope, intercept) = least_squares(&xs, &ys);
    let max_abs_residual = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| (y - (intercept + slope * x)).abs())
        .fold(T::zero(), T::max);
    Ok(RateFitResult {
        d,
        p,
        slope,
        intercept,
        max_abs_residual,
        points: xs.len(),
        records,
    })
}

fn beta_sd<T: Real>(a: T, b: T) -> T {
    let s = a + b;
    (a * b / (s * s * (s + T::one()))).sqrt()
}

/// Ordinary least squares y ≈ intercept + slope·x.
fn least_squares<T: Real>(xs: &[T], ys: &[T]) -> (T, T) {
    let n = T::from_usize(xs.len()).unwrap();
    let mx = xs.iter().fold(T::zero(), |s, &x| s + x) / n;
    let my = ys.iter().fold(T::zero(), |s, &y| s + y) / n;
    let (sxy, sxx) = xs.iter().zip(ys).fold((T::zero(), T::zero()), |(sxy, sxx), (&x, &y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Writes rows as CSV with [`CSV_HEADER`], LF line endings and shortest
/// round-trip decimals. Missing metrics are left empty.
pub fn write_csv<T: Real, W: Write>(records: &[ErrorRecord<T>], out: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let log_err = r.log_scaled_abs_err.map(|v| v.to_string()).unwrap_or_default();
        w.write_record([
            r.a.to_string(),
            r.b.to_string(),
            r.p.to_string(),
            r.d.get().to_string(),
            r.approx.to_string(),
            r.exact.to_string(),
            r.rel_err.to_string(),
            log_err,
            r.tail_prob.to_string(),
            r.underflow.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig<f64> {
        SolverConfig::default()
    }

    #[test]
    fn log_grid_endpoints_and_density() {
        let g = log_spaced_per_decade(1.0_f64, 1024.0, 25).unwrap();
        assert_eq!(g[0], 1.0);
        assert_eq!(*g.last().unwrap(), 1024.0);
        assert_eq!(g.len(), 77);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let g = log_spaced_per_decade(1.0_f64, 100.0, 10).unwrap();
        assert_eq!(g.len(), 21);
        assert!((g[10] - 10.0).abs() < 1e-12);
        assert!(log_spaced(0.0_f64, 1.0, 5).is_err());
        assert!(log_spaced(1.0_f64, 2.0, 1).is_err());
    }

    #[test]
    fn grid_spec_validation() {
        let d = vec![Offset::third()];
        assert!(GridSpec::new(vec![0.25], vec![1.0, 2.0], d.clone()).is_ok());
        assert!(GridSpec::new(vec![], vec![1.0], d.clone()).is_err());
        assert!(GridSpec::new(vec![0.25], vec![], d.clone()).is_err());
        assert!(GridSpec::new(vec![0.25], vec![1.0], vec![]).is_err());
        assert!(GridSpec::new(vec![1.0], vec![1.0], d.clone()).is_err());
        assert!(GridSpec::new(vec![0.25], vec![2.0, 1.0], d.clone()).is_err());
        assert!(GridSpec::new(vec![0.25], vec![-1.0, 1.0], d).is_err());
        let def = GridSpec::<f64>::relative_error_default();
        assert_eq!(def.len(), 6 * 77);
    }

    #[test]
    fn mean_parameterisation() {
        let p = params_for_mean(2.0, 0.25).unwrap();
        assert_eq!((p.a(), p.b()), (2.0, 6.0));
        let p = params_for_mean(2.0, 0.75).unwrap();
        assert_eq!((p.a(), p.b()), (6.0, 2.0));
        assert!(params_for_mean(2.0, 0.0).is_err());
        assert!(params_for_mean(2.0, 1.0).is_err());
    }

    #[test]
    fn symmetric_point_has_zero_error() {
        let rows = relative_error_over_means(4.0, &[0.5], Offset::third(), &cfg()).unwrap();
        let r = &rows[0];
        assert_eq!((r.a, r.b), (4.0, 4.0));
        assert_eq!(r.rel_err, 0.0);
        assert!(r.underflow);
        assert_eq!(r.log_scaled_abs_err, None);
        assert!((r.tail_prob - 0.5).abs() <= 1e-14);
    }

    #[test]
    fn grid_errors_name_the_point() {
        let grid = GridSpec::new(vec![0.25], vec![0.2, 1.0], vec![Offset::third()]).unwrap();
        let err = relative_error_curves(&grid, &cfg()).unwrap_err();
        assert!(matches!(err, Error::GridPoint { a, .. } if a == 0.2));
        assert!(matches!(err.root_cause(), Error::Domain { .. }));
    }

    #[test]
    fn precondition_errors() {
        let d = [Offset::third()];
        assert!(scaled_abs_error_curves(0.5, &[1.0, 2.0], &d, &cfg()).is_err());
        assert!(scaled_abs_error_curves(0.1, &[0.3, 2.0], &d, &cfg()).is_err());
        assert!(tail_probability_grid(&[0.3], &[0.2], &cfg()).is_err());
        assert!(relative_error_over_means(0.3, &[0.2], Offset::third(), &cfg()).is_err());
        assert!(rate_fit(0.6, 8.0, 64.0, 6, Offset::third(), &cfg()).is_err());
        assert!(rate_fit(0.1, 0.5, 64.0, 6, Offset::third(), &cfg()).is_err());
        assert!(rate_fit(0.1, 8.0, 64.0, 4, Offset::third(), &cfg()).is_err());
    }

    #[test]
    fn least_squares_recovers_a_line() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - 1.5 * x).collect();
        let (slope, intercept) = least_squares(&xs, &ys);
        assert!((slope + 1.5).abs() < 1e-15 && (intercept - 2.0).abs() < 1e-15);
    }

    #[test]
    fn csv_layout() {
        let rows = relative_error_over_means(2.0, &[0.5, 0.3], Offset::third(), &cfg()).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(
            fields[..8],
            ["2", "2", "0.5", "0.3333333333333333", "0.5", "0.5", "0", ""]
        );
        assert!((fields[8].parse::<f64>().unwrap() - 0.5).abs() <= 1e-14);
        assert_eq!(fields[9], "true");
        assert!(!text.contains('\r'));
        assert_eq!(lines.len(), 4);
    }
}
