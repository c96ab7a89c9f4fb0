//! Cutoff log-zeta expansion around `T = 1/2`, evenization and the
//! normalized cumulant hierarchy.
//!
//! With `T = 1/2 + u`,
//!
//! ```text
//! log zeta_P(1/2 + u) = sum_n c_n(P) u^n,
//! c_0 = -sum_{p<=P} log(1 - p^(-1/2)),
//! c_n = ((-1)^n / n!) sum_{p<=P} (log p)^n sum_{k>=1} k^(n-1) p^(-k/2).
//! ```
//!
//! Evenization keeps the even coefficients `a_{2k} = c_{2k}`; normalizing by
//! `sigma = sqrt(a_2)` gives `u^2 + sum_{k>=2} kappa_{2k} u^{2k}` with
//! `kappa_{2k} = a_{2k} / a_2^k`.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::primes::{PrimeError, PrimeSumTable, PrimeTable};
use crate::ring::{BigReal, Coeff, Precision};
use crate::series::{SeriesError, TruncatedSeries};

pub const DEFAULT_ORDER: usize = 16;
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("expansion order {0} is outside 1..=64")]
    BadOrder(usize),
    #[error("cumulants through u^{needed} need a series of order >= {needed}, got {have}")]
    OrderTooLow { needed: usize, have: usize },
    #[error("quadratic coefficient a_2 = {0} is not positive")]
    NonPositiveQuadratic(String),
}

/// `log zeta_P(1/2 + u)` truncated at `u^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogZetaExpansion {
    pub cutoff: u64,
    pub series: TruncatedSeries<BigReal>,
}

impl LogZetaExpansion {
    /// Builds the expansion from precomputed per-prime columns (which must
    /// extend to at least `order`).
    pub fn from_sums(sums: &PrimeSumTable, cutoff: u64, order: usize) -> Result<Self, PipelineError> {
        if cutoff < 2 {
            return Err(PrimeError::CutoffTooSmall(cutoff).into());
        }
        if order == 0 || order > MAX_ORDER || order > sums.max_n() {
            return Err(PipelineError::BadOrder(order));
        }
        let prec = sums.column(0).first().map(BigReal::precision).unwrap_or_default();
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(sums.sum(0, cutoff));
        let mut fact = BigUint::from(1u32);
        for n in 1..=order {
            fact *= BigUint::from(n);
            let c = sums.sum(n, cutoff) / BigReal::from_biguint(&fact, prec);
            coeffs.push(if n % 2 == 1 { -c } else { c });
        }
        Ok(LogZetaExpansion { cutoff, series: TruncatedSeries::from_coeffs(coeffs) })
    }

    pub fn evenize(&self) -> CompletedXi<BigReal> {
        let mut xi = evenize(&self.series);
        xi.cutoff = Some(self.cutoff);
        xi
    }
}

/// Log-zeta expansion at cutoff `P` through `u^order`.
pub fn log_zeta_cutoff(cutoff: u64, order: usize, table: &PrimeTable) -> Result<LogZetaExpansion, PipelineError> {
    if cutoff < 2 {
        return Err(PrimeError::CutoffTooSmall(cutoff).into());
    }
    if order == 0 || order > MAX_ORDER {
        return Err(PipelineError::BadOrder(order));
    }
    let sums = PrimeSumTable::build(table, cutoff, order)?;
    LogZetaExpansion::from_sums(&sums, cutoff, order)
}

/// The evenized log series: `log xi = (log Z)_even`, with the removed odd
/// part kept so `log Z = log_xi + odd_removed` holds exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct CompletedXi<C: Coeff> {
    pub cutoff: Option<u64>,
    pub log_xi: TruncatedSeries<C>,
    pub odd_removed: TruncatedSeries<C>,
}

impl<C: Coeff> CompletedXi<C> {
    /// `log H(u) = -(log Z)_odd`.
    pub fn h_factor_log(&self) -> TruncatedSeries<C> {
        -self.odd_removed.clone()
    }

    pub fn reconstruct(&self) -> TruncatedSeries<C> {
        &self.log_xi + &self.odd_removed
    }
}

/// Evenization at the log level.
pub fn evenize<C: Coeff>(log_z: &TruncatedSeries<C>) -> CompletedXi<C> {
    CompletedXi { cutoff: None, log_xi: log_z.even_part(), odd_removed: log_z.odd_part() }
}

/// The evenization operator on an invertible series `Z`:
/// `Xi = Z exp(-(log Z)_odd)`, returned with `O = (log Z)_odd`.
pub fn evenize_product<C: Coeff>(
    z: &TruncatedSeries<C>,
) -> Result<(TruncatedSeries<C>, TruncatedSeries<C>), SeriesError> {
    let odd = z.ln()?.odd_part();
    let correction = (-odd.clone()).exp()?;
    Ok((z * &correction, odd))
}

/// Whether `(xi, o)` is a valid factorization `Z = xi exp(o)` with `xi` even
/// and `o` odd. The product residual is returned alongside.
pub fn check_factorization<C: Coeff>(
    z: &TruncatedSeries<C>,
    xi: &TruncatedSeries<C>,
    o: &TruncatedSeries<C>,
) -> Result<(bool, f64), SeriesError> {
    let rebuilt = xi * &o.exp()?;
    let residual = (&rebuilt - z).max_abs_coeff();
    Ok((xi.is_even() && o.is_odd(), residual))
}

/// `{P, a_0, a_2, ..., a_2M, sigma, kappa_4, ..., kappa_2M}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CumulantTable {
    pub cutoff: Option<u64>,
    /// Order of the series the table was read from.
    pub order: usize,
    /// `(2k, a_{2k})` for `k = 0..=M`.
    pub a: Vec<(usize, BigReal)>,
    pub sigma: BigReal,
    /// `(2k, kappa_{2k})` for `k = 2..=M`.
    pub kappa: Vec<(usize, BigReal)>,
}

impl CumulantTable {
    pub fn max_k(&self) -> usize {
        self.a.len() - 1
    }

    /// `a_n` for even `n`.
    pub fn a(&self, n: usize) -> Option<&BigReal> {
        self.a.iter().find(|(k, _)| *k == n).map(|(_, v)| v)
    }

    /// `kappa_n` for even `n >= 4`.
    pub fn kappa(&self, n: usize) -> Option<&BigReal> {
        self.kappa.iter().find(|(k, _)| *k == n).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let reals = |pairs: &[(usize, BigReal)]| {
            let mut m = Map::new();
            for (k, v) in pairs {
                m.insert(k.to_string(), Value::String(v.to_decimal_string()));
            }
            Value::Object(m)
        };
        json!({
            "P": self.cutoff,
            "order": self.order,
            "a": reals(&self.a),
            "sigma": self.sigma.to_decimal_string(),
            "kappa": reals(&self.kappa),
        })
    }

    pub fn csv_header(&self) -> String {
        let mut cols = vec!["P".to_string(), "order".to_string()];
        cols.extend(self.a.iter().map(|(k, _)| format!("a{k}")));
        cols.push("sigma".into());
        cols.extend(self.kappa.iter().map(|(k, _)| format!("kappa{k}")));
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = vec![self.cutoff.map(|p| p.to_string()).unwrap_or_default(), self.order.to_string()];
        cols.extend(self.a.iter().map(|(_, v)| v.to_decimal_string()));
        cols.push(self.sigma.to_decimal_string());
        cols.extend(self.kappa.iter().map(|(_, v)| v.to_decimal_string()));
        cols.join(",")
    }
}

/// Reads `a_0..a_2M` off the evenized series and forms `sigma` and `kappa`.
pub fn cumulants(xi: &CompletedXi<BigReal>, max_k: usize) -> Result<CumulantTable, PipelineError> {
    let series = &xi.log_xi;
    if 2 * max_k > series.order() || max_k == 0 {
        return Err(PipelineError::OrderTooLow { needed: 2 * max_k.max(1), have: series.order() });
    }
    let a: Vec<(usize, BigReal)> = (0..=max_k).map(|k| (2 * k, series.coeff(2 * k).clone())).collect();
    let a2 = a[1].1.clone();
    if !a2.is_positive() {
        return Err(PipelineError::NonPositiveQuadratic(a2.to_decimal_digits(12)));
    }
    let sigma = a2.sqrt().expect("positive");
    let kappa = (2..=max_k).map(|k| (2 * k, a[k].1.clone() / a2.powi_self(k as i64))).collect();
    Ok(CumulantTable { cutoff: xi.cutoff, order: series.order(), a, sigma, kappa })
}

/// `log xi~(u) = log xi(u / sigma) - a_0`, truncated at the table's `2M`.
pub fn normalize(xi: &CompletedXi<BigReal>, table: &CumulantTable) -> TruncatedSeries<BigReal> {
    let scaled = xi.log_xi.truncate(2 * table.max_k()).scale_variable(&table.sigma.recip());
    let mut out = scaled;
    let c0 = out.coeff(0).clone() - &table.a[0].1;
    out.set_coeff(0, c0);
    out
}

/// `max_{2<=k<=M} |coefficient of u^(2k)|` of a normalized series.
pub fn gaussian_deviation(normalized: &TruncatedSeries<BigReal>, max_k: usize) -> BigReal {
    let prec = normalized.ring_ctx();
    (2..=max_k)
        .filter(|k| 2 * k <= normalized.order())
        .map(|k| normalized.coeff(2 * k).abs())
        .fold(BigReal::zero_with(prec), BigReal::max)
}

/// Everything the pipeline produces for one cutoff.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub expansion: LogZetaExpansion,
    pub xi: CompletedXi<BigReal>,
    pub table: CumulantTable,
    pub normalized: TruncatedSeries<BigReal>,
}

/// Expansion, evenization, cumulants and normalization at one cutoff.
pub fn run_pipeline(sums: &PrimeSumTable, cutoff: u64, order: usize) -> Result<PipelineRun, PipelineError> {
    let expansion = LogZetaExpansion::from_sums(sums, cutoff, order)?;
    let xi = expansion.evenize();
    let table = cumulants(&xi, order / 2)?;
    let normalized = normalize(&xi, &table);
    Ok(PipelineRun { expansion, xi, table, normalized })
}

/// Convenience wrapper building its own prime table.
pub fn run_pipeline_at(cutoff: u64, order: usize, prec: Precision) -> Result<PipelineRun, PipelineError> {
    let table = PrimeTable::new(cutoff, prec)?;
    let sums = PrimeSumTable::build(&table, cutoff, order)?;
    run_pipeline(&sums, cutoff, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rational;

    fn prec() -> Precision {
        Precision::default()
    }

    fn real(v: &str) -> BigReal {
        BigReal::parse(v, prec()).unwrap()
    }

    fn rel(a: &BigReal, b: &BigReal) -> f64 {
        ((a - b) / b.clone()).abs().to_f64()
    }

    #[test]
    fn single_prime_coefficients() {
        let t = PrimeTable::new(2, prec()).unwrap();
        let e = log_zeta_cutoff(2, 4, &t).unwrap();
        let s = &e.series;
        assert!(rel(s.coeff(0), &real("1.22794717729951567994122538570888059306591039544")) < 1e-45);
        assert!(rel(s.coeff(1), &real("-1.67340532402849250113113384509340994936696083346")) < 1e-45);
        assert!(rel(s.coeff(2), &real("1.98010078038562763046420633318771973452680960083")) < 1e-45);
        assert!(rel(s.coeff(4), &real("4.00007788280027633176608739038235551601453050939")) < 1e-45);
    }

    #[test]
    fn cutoff_below_two_is_rejected() {
        let t = PrimeTable::new(10, prec()).unwrap();
        assert!(matches!(log_zeta_cutoff(1, 4, &t), Err(PipelineError::Prime(PrimeError::CutoffTooSmall(1)))));
        assert!(matches!(log_zeta_cutoff(5, 0, &t), Err(PipelineError::BadOrder(0))));
    }

    #[test]
    fn evenize_examples() {
        let q = |n, d| Rational::from_ratio(&(), n, d);
        let u = TruncatedSeries::<Rational>::variable(&(), 4);
        assert!(evenize(&u).log_xi.is_zero());
        let u2 = TruncatedSeries::monomial(q(1, 1), 2, 4);
        assert_eq!(evenize(&u2).log_xi, u2);
        let mercator = TruncatedSeries::from_coeffs(vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)]).ln().unwrap();
        let xi = evenize(&mercator);
        assert_eq!(xi.log_xi.coeffs(), &[q(0, 1), q(0, 1), q(-1, 2), q(0, 1), q(-1, 4)]);
        assert_eq!(xi.reconstruct(), mercator);
        assert_eq!(xi.h_factor_log(), -mercator.odd_part());
    }

    #[test]
    fn pure_gaussian_has_unit_sigma() {
        let s = TruncatedSeries::monomial(BigReal::one_with(prec()), 2, 8);
        let xi = evenize(&s);
        let t = cumulants(&xi, 4).unwrap();
        assert_eq!(t.sigma, BigReal::one_with(prec()));
        assert!(t.kappa.iter().all(|(_, k)| k.is_zero()));
        let n = normalize(&xi, &t);
        assert!(gaussian_deviation(&n, 4).is_zero());
    }

    #[test]
    fn cumulants_reject_bad_inputs() {
        let s = TruncatedSeries::monomial(-BigReal::one_with(prec()), 2, 4);
        assert!(matches!(cumulants(&evenize(&s), 2), Err(PipelineError::NonPositiveQuadratic(_))));
        assert!(matches!(cumulants(&evenize(&s), 3), Err(PipelineError::OrderTooLow { .. })));
    }

    #[test]
    fn single_prime_kappa4() {
        let run = run_pipeline_at(2, 4, prec()).unwrap();
        let k4 = run.table.kappa(4).unwrap();
        assert!(rel(k4, &real("1.02022005725994042886708884771909118630908463551")) < 1e-45);
        assert!(rel(run.normalized.coeff(4), k4) < 1e-70);
        assert!(run.normalized.coeff(0).is_zero());
        assert!(rel(run.normalized.coeff(2), &BigReal::one_with(prec())) < 1e-70);
        assert_eq!(gaussian_deviation(&run.normalized, 2), run.normalized.coeff(4).abs());
    }

    #[test]
    fn cumulant_json_shape() {
        let run = run_pipeline_at(2, 4, prec()).unwrap();
        let v = run.table.to_json();
        assert_eq!(v["P"], 2);
        assert_eq!(v["order"], 4);
        assert!(v["a"]["2"].as_str().unwrap().starts_with("1.9801007803856276"));
        assert!(v["kappa"]["4"].is_string());
        assert_eq!(run.table.csv_header(), "P,order,a0,a2,a4,sigma,kappa4");
    }
}
