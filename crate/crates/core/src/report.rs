//! Command implementations behind the `fgzeta` binary. Every command renders
//! to a `String` so output is identical whether it goes to stdout or a file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::fluctuation::{decompose, FluctError, InnerSum, CSV_HEADER};
use crate::formal_group::{
    additive_law, additivity_residual, check_axioms, check_strict_iso, first_nonzero, fgm_exp, fgm_log,
    log_from_law, multiplicative_law, FormalGroupError, FormalGroupLaw, Series,
};
use crate::json::AnySeries;
use crate::primes::{PrimeError, PrimeSumTable, PrimeTable, MAX_PMAX};
use crate::ring::{BigReal, Coeff, Precision, Rational};
use crate::series::{SeriesError, TruncatedSeries};
use crate::zeta::{gaussian_deviation, run_pipeline, run_pipeline_at, PipelineError, PipelineRun, MAX_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest order accepted by `fg-check`.
pub const FG_MAX_ORDER: usize = 32;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Fluct(#[from] FluctError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    FormalGroup(#[from] FormalGroupError),
    #[error("grid is empty after rounding and deduplication")]
    EmptyGrid,
    #[error("slope fit for {label} needs at least 4 points, got {got}")]
    TooFewPoints { label: String, got: usize },
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
}

impl ReportError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

/// Rendered output plus the exit code the command asks for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, exit_code: EXIT_OK }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = ReportError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(ReportError::Usage(format!("unknown format `{other}` (csv|json)"))),
        }
    }
}

/// Writes `text` to `out`, or returns it untouched for stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<Option<String>, ReportError> {
    match out {
        None => Ok(Some(text.to_string())),
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| ReportError::Io { path: path.display().to_string(), message: e.to_string() })?;
            Ok(None)
        }
    }
}

fn check_order(order: usize) -> Result<(), ReportError> {
    if order < 2 || order % 2 == 1 || order > MAX_ORDER {
        return Err(ReportError::Usage(format!("--order must be an even integer in 2..={MAX_ORDER}, got {order}")));
    }
    Ok(())
}

fn real_map(pairs: impl Iterator<Item = (usize, BigReal)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), Value::String(v.to_decimal_string()));
    }
    Value::Object(m)
}

fn run_json(run: &PipelineRun) -> Value {
    let mut v = run.table.to_json();
    let normalized = run.normalized.coeffs().iter().cloned().enumerate().filter(|(k, _)| k % 2 == 0);
    v["normalized"] = real_map(normalized);
    v["gaussianDeviation"] =
        Value::String(gaussian_deviation(&run.normalized, run.table.max_k()).to_decimal_string());
    v
}

fn run_csv_row(run: &PipelineRun) -> String {
    format!("{},{}", run.table.csv_row(), gaussian_deviation(&run.normalized, run.table.max_k()).to_decimal_string())
}

fn run_csv_header(run: &PipelineRun) -> String {
    format!("{},gaussianDeviation", run.table.csv_header())
}

#[derive(Clone, Debug)]
pub struct CumulantsConfig {
    pub pmax: u64,
    pub order: usize,
    pub precision: Precision,
    pub format: Format,
}

/// `CumulantTable` for one cutoff. JSON output also carries the even
/// coefficients of the normalized series and the Gaussian deviation.
pub fn cmd_cumulants(cfg: &CumulantsConfig) -> Result<Report, ReportError> {
    check_order(cfg.order)?;
    let run = run_pipeline_at(cfg.pmax, cfg.order, cfg.precision)?;
    let text = match cfg.format {
        Format::Json => format!("{}\n", run_json(&run)),
        Format::Csv => format!("{}\n{}\n", run_csv_header(&run), run_csv_row(&run)),
    };
    Ok(Report::ok(text))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Grid {
    /// Powers of two in `[pmin, pmax]`.
    PowersOfTwo,
    /// `count` log-spaced points from `pmin` to `pmax`.
    Geometric(usize),
    Explicit(Vec<u64>),
}

impl std::str::FromStr for Grid {
    type Err = ReportError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ReportError::Usage(format!("bad grid `{s}` (pow2 | geometric:<n> | list:<p1>,<p2>,...)"));
        if s == "pow2" {
            return Ok(Grid::PowersOfTwo);
        }
        if let Some(n) = s.strip_prefix("geometric:") {
            return n.parse().map(Grid::Geometric).map_err(|_| bad());
        }
        if let Some(list) = s.strip_prefix("list:") {
            return list.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>().map(Grid::Explicit);
        }
        Err(bad())
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub pmin: u64,
    pub pmax: u64,
    pub grid: Grid,
    pub order: usize,
    pub precision: Precision,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl ScanConfig {
    /// Grid points: rounded, deduplicated, ascending, all within `[pmin, pmax]`.
    pub fn points(&self) -> Result<Vec<u64>, ReportError> {
        if self.pmin < 2 {
            return Err(PrimeError::CutoffTooSmall(self.pmin).into());
        }
        if self.pmax > MAX_PMAX {
            return Err(PrimeError::CutoffTooLarge(self.pmax).into());
        }
        if self.pmin > self.pmax {
            return Err(ReportError::Usage(format!("--pmin {} exceeds --pmax {}", self.pmin, self.pmax)));
        }
        let mut pts: Vec<u64> = match &self.grid {
            Grid::PowersOfTwo => (1..64).map(|k| 1u64 << k).filter(|p| (self.pmin..=self.pmax).contains(p)).collect(),
            Grid::Geometric(0) => Vec::new(),
            Grid::Geometric(1) => vec![self.pmin],
            Grid::Geometric(n) => {
                let (lo, hi) = ((self.pmin as f64).ln(), (self.pmax as f64).ln());
                (0..*n)
                    .map(|i| (lo + (hi - lo) * i as f64 / (*n - 1) as f64).exp().round() as u64)
                    .map(|p| p.clamp(self.pmin, self.pmax))
                    .collect()
            }
            Grid::Explicit(list) => list.iter().copied().filter(|p| (self.pmin..=self.pmax).contains(p)).collect(),
        };
        pts.sort_unstable();
        pts.dedup();
        if pts.is_empty() {
            return Err(ReportError::EmptyGrid);
        }
        Ok(pts)
    }
}

/// Least-squares line through `(log P, log value)` points.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeFit {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

impl SlopeFit {
    pub fn fit(label: &str, points: Vec<(f64, f64)>) -> Result<SlopeFit, ReportError> {
        if points.len() < 4 {
            return Err(ReportError::TooFewPoints { label: label.to_string(), got: points.len() });
        }
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
        Ok(SlopeFit { label: label.to_string(), points, slope, intercept, r2 })
    }

    pub fn csv_line(&self) -> String {
        format!("#fit,{},slope={:.6},intercept={:.6},r2={:.6},points={}", self.label, self.slope, self.intercept, self.r2, self.points.len())
    }

    pub fn to_json(&self) -> Value {
        json!({"quantity": self.label, "slope": self.slope, "intercept": self.intercept, "r2": self.r2, "points": self.points.len()})
    }
}

/// Pipeline results along a grid, in grid order.
pub fn scan_runs(cfg: &ScanConfig) -> Result<Vec<PipelineRun>, ReportError> {
    check_order(cfg.order)?;
    let points = cfg.points()?;
    let pmax = *points.last().expect("non-empty");
    let table = PrimeTable::new(pmax, cfg.precision)?;
    let sums = PrimeSumTable::build(&table, pmax, cfg.order)?;
    points
        .par_iter()
        .map(|&p| run_pipeline(&sums, p, cfg.order).map_err(ReportError::from))
        .collect()
}

/// Fits of `log a_2`, `log kappa_4` and `log gaussianDeviation` against `log P`.
pub fn scan_fits(runs: &[PipelineRun]) -> Result<Vec<SlopeFit>, ReportError> {
    let logp = |r: &PipelineRun| (r.table.cutoff.expect("pipeline sets P") as f64).ln();
    let series = |label: &str, value: &dyn Fn(&PipelineRun) -> f64| {
        SlopeFit::fit(label, runs.iter().map(|r| (logp(r), value(r).ln())).collect())
    };
    Ok(vec![
        series("a2", &|r| r.table.a(2).expect("order >= 2").to_f64())?,
        series("kappa4", &|r| r.table.kappa(4).map(BigReal::to_f64).unwrap_or(f64::NAN))?,
        series("gaussianDeviation", &|r| gaussian_deviation(&r.normalized, r.table.max_k()).to_f64())?,
    ])
}

/// One row per grid point followed by the slope fits. Fits need order >= 4
/// and at least four grid points; otherwise only rows are written.
pub fn cmd_scan(cfg: &ScanConfig) -> Result<Report, ReportError> {
    let runs = scan_runs(cfg)?;
    let fits = if cfg.order >= 4 && runs.len() >= 4 { scan_fits(&runs)? } else { Vec::new() };
    let text = match cfg.format {
        Format::Csv => {
            let mut s = format!("{}\n", run_csv_header(&runs[0]));
            for r in &runs {
                let _ = writeln!(s, "{}", run_csv_row(r));
            }
            for f in &fits {
                let _ = writeln!(s, "{}", f.csv_line());
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = runs.iter().map(run_json).collect();
            let fits: Vec<Value> = fits.iter().map(SlopeFit::to_json).collect();
            format!("{}\n", json!({"rows": rows, "fits": fits}))
        }
    };
    Ok(Report::ok(text))
}

#[derive(Clone, Debug)]
pub struct FluctConfig {
    pub m: usize,
    pub pmax: u64,
    pub quad_tol: f64,
    pub k1_only: bool,
    pub precision: Precision,
}

/// Decomposition row; exit code 1 when the residual exceeds its budget.
pub fn cmd_fluct(cfg: &FluctConfig) -> Result<Report, ReportError> {
    if cfg.m == 0 {
        return Err(ReportError::Usage("--m must be >= 1".into()));
    }
    if !(cfg.quad_tol.is_finite() && cfg.quad_tol > 0.0) {
        return Err(ReportError::Usage(format!("--quad-tol must be positive, got {}", cfg.quad_tol)));
    }
    let table = PrimeTable::new(cfg.pmax, cfg.precision)?;
    let inner = if cfg.k1_only { InnerSum::Truncated { kmax: 1 } } else { InnerSum::ClosedForm };
    let d = decompose(cfg.m, cfg.pmax, &table, cfg.quad_tol, inner)?;
    let mut text = format!("{CSV_HEADER}\n{}\n", d.csv_row());
    let exit_code = if d.within_budget() {
        EXIT_OK
    } else {
        let _ = writeln!(text, "# residual {:e} exceeds budget {:e}", d.residual.abs().to_f64(), d.budget());
        EXIT_FAILURE
    };
    Ok(Report { text, exit_code })
}

#[derive(Clone, Debug)]
pub struct FgCheckConfig {
    pub order: usize,
    pub trials: usize,
    pub seed: u64,
}

/// `F_c(X, Y) = X + Y + cXY`, a rescaled multiplicative law with
/// logarithm `log(1 + cX)/c`. Used for positive isomorphism probes.
struct ScaledMultiplicative {
    c: Rational,
    name: String,
}

impl FormalGroupLaw for ScaledMultiplicative {
    fn name(&self) -> &str {
        &self.name
    }
    fn apply<C: Coeff>(&self, x: &TruncatedSeries<C>, y: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        let c = lift_rational::<C>(&self.c, &x.ring_ctx());
        &(x + y) + &(x * y).map(|v| v.clone() * c.clone())
    }
}

fn lift_rational<C: Coeff>(q: &Rational, ctx: &C::Ctx) -> C {
    let num = i64::try_from(q.numer()).expect("small probe rational");
    let den = i64::try_from(q.denom()).expect("small probe rational");
    C::from_ratio(ctx, num, den)
}

fn mercator(order: usize, scale: &Rational) -> Series {
    // log(1 + cX)/c = sum (-1)^(n+1) c^(n-1) X^n / n
    let mut coeffs = vec![Rational::zero(&())];
    let mut pow = Rational::one(&());
    for n in 1..=order {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        coeffs.push(Rational::from_ratio(&(), sign, n as i64) * pow.clone());
        pow *= scale.clone();
    }
    Series::from_coeffs(coeffs)
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-5..=5);
        let d: i64 = rng.gen_range(1..=5);
        if !nonzero || n != 0 {
            return Rational::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

struct Checks {
    lines: Vec<String>,
    failed: bool,
}

impl Checks {
    fn record(&mut self, name: &str, outcome: Result<String, String>) {
        match outcome {
            Ok(detail) => self.lines.push(format!("PASS {name}{}", if detail.is_empty() { String::new() } else { format!(": {detail}") })),
            Err(detail) => {
                self.failed = true;
                self.lines.push(format!("FAIL {name}: {detail}"));
            }
        }
    }
}

fn coeff_list(s: &Series) -> String {
    s.coeffs()[1..].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

fn zero_or_first(label: &str, s: &crate::formal_group::Bivariate, order: usize) -> Result<String, String> {
    match first_nonzero(s, order) {
        None => Ok(String::new()),
        Some((m, c)) => Err(format!("{label} has coefficient {c} at X^{} Y^{}", m[0], m[1])),
    }
}

/// Formal-group property checks; one PASS/FAIL line per property.
pub fn cmd_fg_check(cfg: &FgCheckConfig) -> Result<Report, ReportError> {
    let n = cfg.order;
    if !(2..=FG_MAX_ORDER).contains(&n) {
        return Err(ReportError::Usage(format!("--order must lie in 2..={FG_MAX_ORDER}, got {n}")));
    }
    let mut checks = Checks { lines: Vec::new(), failed: false };
    let mult = multiplicative_law();
    let add = additive_law();

    for (name, report) in [("axioms multiplicative", check_axioms(&mult, n)), ("axioms additive", check_axioms(&add, n))] {
        let outcome = match (&report.identity, &report.commutativity, &report.associativity) {
            (None, None, None) => Ok(format!("order {n}")),
            (Some(m), _, _) => Err(format!("identity fails at {m:?}")),
            (_, Some(m), _) => Err(format!("commutativity fails at {m:?}")),
            (_, _, Some(m)) => Err(format!("associativity fails at {m:?}")),
        };
        checks.record(name, outcome);
    }

    let one = Rational::one(&());
    let log_mult = log_from_law(&mult, n)?;
    let expected = mercator(n, &one);
    checks.record(
        "log multiplicative is log(1+X)",
        match (0..=n).find(|&k| log_mult.coeff(k) != expected.coeff(k)) {
            None => Ok(coeff_list(&log_mult.truncate(n.min(5)))),
            Some(k) => Err(format!("coefficient {k} is {}, expected {}", log_mult.coeff(k), expected.coeff(k))),
        },
    );
    let log_add = log_from_law(&add, n)?;
    checks.record(
        "log additive is X",
        if log_add == Series::variable(&(), n) { Ok(String::new()) } else { Err(coeff_list(&log_add)) },
    );
    checks.record("additivity of log multiplicative", zero_or_first("residual", &additivity_residual(&mult, &log_mult, n), n));

    let u = Series::variable(&(), n);
    let log_exp = fgm_log(&fgm_exp(&u)?)?;
    let exp_log = fgm_exp(&fgm_log(&u)?)?;
    checks.record("log(exp(u)) = u", if log_exp == u { Ok(String::new()) } else { Err(coeff_list(&log_exp)) });
    checks.record("exp(log(u)) = u", if exp_log == u { Ok(String::new()) } else { Err(coeff_list(&exp_log)) });

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for t in 0..cfg.trials {
        // perturbing the logarithm must break additivity
        let k = rng.gen_range(2..=n);
        let delta = random_rational(&mut rng, true);
        let mut perturbed = log_mult.clone();
        perturbed.set_coeff(k, perturbed.coeff(k).clone() + delta.clone());
        let residual = additivity_residual(&mult, &perturbed, n);
        checks.record(
            &format!("uniqueness trial {t}"),
            match first_nonzero(&residual, n) {
                Some((m, _)) => Ok(format!("delta {delta} at u^{k} breaks additivity at X^{} Y^{}", m[0], m[1])),
                None => Err(format!("delta {delta} at u^{k} left the residual zero")),
            },
        );

        // a random strict coordinate change other than log(1+X) is not an isomorphism
        let mut f = Series::variable(&(), n);
        for j in 2..=n {
            f.set_coeff(j, random_rational(&mut rng, false));
        }
        if f == log_mult {
            f.set_coeff(n, f.coeff(n).clone() + one.clone());
        }
        let iso = check_strict_iso(&f, &mult, &add, n)?;
        checks.record(
            &format!("random strict iso trial {t}"),
            match iso.first_failure {
                Some(m) => Ok(format!("rejected at X^{} Y^{}", m[0], m[1])),
                None => Err("random series accepted as isomorphism".into()),
            },
        );

        // rescaled law F_c: logarithm log(1+cX)/c and a true strict isomorphism
        let c = random_rational(&mut rng, true);
        let law = ScaledMultiplicative { name: format!("X+Y+({c})XY"), c: c.clone() };
        let ell = log_from_law(&law, n)?;
        let expected = mercator(n, &c);
        let iso = check_strict_iso(&ell, &law, &add, n)?;
        checks.record(
            &format!("scaled law trial {t}"),
            if ell != expected {
                Err(format!("log of {} differs from log(1+cX)/c", law.name()))
            } else if let Some(m) = iso.first_failure {
                Err(format!("log of {} fails the isomorphism at X^{} Y^{}", law.name(), m[0], m[1]))
            } else {
                Ok(format!("c = {c}"))
            },
        );
    }

    let mut text = checks.lines.join("\n");
    text.push('\n');
    Ok(Report { text, exit_code: if checks.failed { EXIT_FAILURE } else { EXIT_OK } })
}

/// Splits a log-series into its even part and the removed odd part. The
/// input is a series document or a previous `evenize` output (its `xiLog`).
pub fn cmd_evenize(input: &str, prec: Precision) -> Result<Report, ReportError> {
    let value: Value = serde_json::from_str(input).map_err(|e| SeriesError::Parse(e.to_string()))?;
    let doc = match value.get("xiLog") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let series = AnySeries::from_json_value(doc, prec)?;
    let out = json!({"xiLog": series.even_part().to_json_value(), "oddRemoved": series.odd_part().to_json_value()});
    Ok(Report::ok(format!("{out}\n")))
}

pub fn cmd_evenize_file(path: &Path, prec: Precision) -> Result<Report, ReportError> {
    let input = std::fs::read_to_string(path)
        .map_err(|e| ReportError::Io { path: path.display().to_string(), message: e.to_string() })?;
    cmd_evenize(&input, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(grid: Grid, pmin: u64, pmax: u64) -> ScanConfig {
        ScanConfig { pmin, pmax, grid, order: 4, precision: Precision(128), format: Format::Csv, out: None }
    }

    #[test]
    fn grids() {
        assert_eq!(scan(Grid::PowersOfTwo, 3, 40).points().unwrap(), vec![4, 8, 16, 32]);
        assert_eq!(scan(Grid::Geometric(11), 1024, 1 << 20).points().unwrap(), (10..=20).map(|k| 1u64 << k).collect::<Vec<_>>());
        assert_eq!(scan(Grid::Geometric(6), 2, 4).points().unwrap(), vec![2, 3, 4]);
        assert_eq!(scan(Grid::Explicit(vec![50, 7, 7, 3]), 2, 40).points().unwrap(), vec![3, 7]);
        assert!(matches!(scan(Grid::Geometric(0), 2, 40).points(), Err(ReportError::EmptyGrid)));
        assert!(matches!(scan(Grid::PowersOfTwo, 1, 40).points(), Err(ReportError::Prime(_))));
        assert_eq!("geometric:5".parse::<Grid>().unwrap(), Grid::Geometric(5));
        assert_eq!("list:2, 3".parse::<Grid>().unwrap(), Grid::Explicit(vec![2, 3]));
        assert!("geometric:x".parse::<Grid>().is_err());
    }

    #[test]
    fn slope_fit_recovers_power_law() {
        let pts: Vec<(f64, f64)> = (1..=6).map(|k| (k as f64, 0.5 * k as f64 + 1.0)).collect();
        let f = SlopeFit::fit("y", pts).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12 && (f.r2 - 1.0).abs() < 1e-12);
        assert!(matches!(SlopeFit::fit("y", vec![(0.0, 0.0); 3]), Err(ReportError::TooFewPoints { .. })));
    }

    #[test]
    fn evenize_examples() {
        let p = Precision::default();
        let input = r#"{"order":3,"ring":"rational","coeffs":["0","1","1","1"]}"#;
        let out = cmd_evenize(input, p).unwrap().text;
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["xiLog"]["coeffs"], json!(["0", "0", "1", "0"]));
        assert_eq!(v["oddRemoved"]["coeffs"], json!(["0", "1", "0", "1"]));
        let again: Value = serde_json::from_str(&cmd_evenize(&out, p).unwrap().text).unwrap();
        assert_eq!(again["xiLog"], v["xiLog"]);
        let bad = r#"{"order":0,"ring":"quaternion","coeffs":["1"]}"#;
        assert!(matches!(cmd_evenize(bad, p), Err(ReportError::Series(SeriesError::UnknownRing(_)))));
    }

    #[test]
    fn fg_check_small_order_passes() {
        let r = cmd_fg_check(&FgCheckConfig { order: 5, trials: 3, seed: 7 }).unwrap();
        assert_eq!(r.exit_code, EXIT_OK, "{}", r.text);
        assert!(r.text.contains("1, -1/2, 1/3, -1/4, 1/5"));
        assert!(!r.text.contains("FAIL"));
    }

    #[test]
    fn usage_errors() {
        let c = CumulantsConfig { pmax: 10, order: 3, precision: Precision(64), format: Format::Csv };
        assert_eq!(cmd_cumulants(&c).unwrap_err().exit_code(), EXIT_USAGE);
        let c = CumulantsConfig { pmax: 1, order: 4, precision: Precision(64), format: Format::Csv };
        let err = cmd_cumulants(&c).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_FAILURE);
        assert!(err.to_string().contains("below 2"));
        assert_eq!(cmd_fg_check(&FgCheckConfig { order: 33, trials: 1, seed: 0 }).unwrap_err().exit_code(), EXIT_USAGE);
    }
}
