//! Boundary–bulk split of the even cumulants through `E(x) = theta(x) - x`.
//!
//! With `phi_2m(x) = (log x)^(2m-1) S_(2m-1)(x^(-1/2)) / (2m)!` every prime
//! contributes `phi(p) log p` to `a_2m(P)`, so `a_2m(P) = int_(2-)^P phi dtheta`.
//! Splitting `dtheta = dx + dE` and integrating by parts gives
//!
//! ```text
//! a_2m(P) = [int_2^P phi dx + 2 phi(2)] + phi(P) E(P) - int_2^P E phi' dx
//! ```
//!
//! where `2 phi(2)` is the jump of `E` at its left endpoint (`E(2-) = -2`).

use rayon::prelude::*;
use thiserror::Error;

use crate::primes::{pairwise_sum, KPowSums, PrimeError, PrimeTable};
use crate::quadrature::{integrate, QuadratureConfig, QuadratureError};
use crate::ring::{BigReal, Precision};
use crate::zeta::{log_zeta_cutoff, PipelineError};

pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

/// Closure budget multiplier: `|residual| <= BUDGET_FACTOR * quad_tol * |total|`.
pub const BUDGET_FACTOR: f64 = 10.0;

pub const CSV_HEADER: &str = "m,P,total,main,boundary,bulkFluct,residual,E_at_P";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FluctError {
    #[error(transparent)]
    Prime(#[from] PrimeError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("weight function is only defined for x >= 2, got {0}")]
    BelowDomain(String),
    #[error("cumulant index m must be >= 1")]
    BadIndex,
}

/// How the inner `k`-sum of the weight is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerSum {
    /// Full `sum_(k>=1) k^r y^k` through the Eulerian closed form.
    ClosedForm,
    /// `sum_(k<=kmax) k^r y^k`; `kmax = 1` keeps only the first prime powers.
    Truncated { kmax: usize },
}

#[derive(Clone, Debug)]
pub struct WeightFunction {
    m: usize,
    inner: InnerSum,
    sums: KPowSums,
    inv_factorial: BigReal,
    precision: Precision,
}

impl WeightFunction {
    pub fn new(m: usize, inner: InnerSum, prec: Precision) -> Result<Self, FluctError> {
        if m == 0 {
            return Err(FluctError::BadIndex);
        }
        let fact = (1..=2 * m as u64).fold(BigReal::one_with(prec), |acc, k| acc * BigReal::from_u64_with(k, prec));
        Ok(WeightFunction { m, inner, sums: KPowSums::new(2 * m, prec), inv_factorial: fact.recip(), precision: prec })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn inner(&self) -> InnerSum {
        self.inner
    }

    fn check(&self, x: &BigReal) -> Result<(), FluctError> {
        if *x < BigReal::from_i64_with(2, self.precision) {
            return Err(FluctError::BelowDomain(x.to_decimal_digits(12)));
        }
        Ok(())
    }

    fn k_sum(&self, r: usize, y: &BigReal) -> BigReal {
        match self.inner {
            InnerSum::ClosedForm => self.sums.eval(r, y).expect("0 < x^(-1/2) < 1 for x >= 2"),
            InnerSum::Truncated { kmax } => {
                let mut acc = BigReal::zero_with(self.precision);
                let mut yk = BigReal::one_with(self.precision);
                for k in 1..=kmax as u64 {
                    yk = yk * y;
                    acc = acc + BigReal::from_u64_with(k, self.precision).powi_self(r as i64) * &yk;
                }
                acc
            }
        }
    }

    fn log_and_y(&self, x: &BigReal) -> (BigReal, BigReal) {
        let l = x.ln().expect("x >= 2");
        let y = x.sqrt().expect("x >= 2").recip();
        (l, y)
    }

    /// `phi_2m(x)`.
    pub fn phi(&self, x: &BigReal) -> Result<BigReal, FluctError> {
        self.check(x)?;
        Ok(self.phi_unchecked(x))
    }

    fn phi_unchecked(&self, x: &BigReal) -> BigReal {
        let r = 2 * self.m - 1;
        let (l, y) = self.log_and_y(x);
        l.powi_self(r as i64) * self.k_sum(r, &y) * &self.inv_factorial
    }

    /// `phi_2m'(x) = [r L^(r-1) S_r(y) - L^r S_(r+1)(y) / 2] / (x (2m)!)`
    /// with `L = log x`, `y = x^(-1/2)`, `r = 2m - 1`.
    pub fn phi_derivative(&self, x: &BigReal) -> Result<BigReal, FluctError> {
        self.check(x)?;
        Ok(self.phi_derivative_unchecked(x))
    }

    fn phi_derivative_unchecked(&self, x: &BigReal) -> BigReal {
        let prec = self.precision;
        let r = 2 * self.m - 1;
        let (l, y) = self.log_and_y(x);
        let lr1 = l.powi_self(r as i64 - 1);
        let lr = &lr1 * &l;
        let first = BigReal::from_u64_with(r as u64, prec) * lr1 * self.k_sum(r, &y);
        let second = lr * self.k_sum(r + 1, &y) / BigReal::from_i64_with(2, prec);
        (first - second) * &self.inv_factorial / x
    }
}

/// `sum_(p<=P) phi(p) log p` against the pipeline's `a_2m(P)`.
#[derive(Clone, Debug)]
pub struct StieltjesCheck {
    pub stieltjes_sum: BigReal,
    pub pipeline: BigReal,
    pub residual: BigReal,
}

impl StieltjesCheck {
    pub fn relative(&self) -> f64 {
        (self.residual.abs() / self.pipeline.abs()).to_f64()
    }
}

fn check_cutoff(cutoff: u64, table: &PrimeTable) -> Result<(), FluctError> {
    if cutoff < 2 {
        return Err(PrimeError::CutoffTooSmall(cutoff).into());
    }
    if cutoff > table.pmax() {
        return Err(PrimeError::CutoffTooLarge(cutoff).into());
    }
    Ok(())
}

fn stieltjes_sum(w: &WeightFunction, cutoff: u64, table: &PrimeTable) -> BigReal {
    let prec = table.precision();
    let n = table.count_up_to(cutoff);
    let terms: Vec<BigReal> = table.primes()[..n]
        .par_iter()
        .map(|&p| {
            let x = BigReal::from_u64_with(p, prec);
            let log_p = x.ln().expect("p >= 2");
            w.phi_unchecked(&x) * log_p
        })
        .collect();
    pairwise_sum(&terms, &BigReal::zero_with(prec))
}

fn pipeline_coefficient(m: usize, cutoff: u64, table: &PrimeTable) -> Result<BigReal, FluctError> {
    let xi = log_zeta_cutoff(cutoff, 2 * m, table)?.evenize();
    Ok(xi.log_xi.coeff(2 * m).clone())
}

/// Evaluates `a_2m(P)` as the Stieltjes sum over primes and compares it with
/// the evenized log-zeta coefficient. No quadrature is involved.
pub fn stieltjes_identity_check(m: usize, cutoff: u64, table: &PrimeTable) -> Result<StieltjesCheck, FluctError> {
    check_cutoff(cutoff, table)?;
    let w = WeightFunction::new(m, InnerSum::ClosedForm, table.precision())?;
    let stieltjes_sum = stieltjes_sum(&w, cutoff, table);
    let pipeline = pipeline_coefficient(m, cutoff, table)?;
    let residual = &stieltjes_sum - &pipeline;
    Ok(StieltjesCheck { stieltjes_sum, pipeline, residual })
}

/// One boundary–bulk decomposition.
#[derive(Clone, Debug)]
pub struct FluctDecomposition {
    pub m: usize,
    pub cutoff: u64,
    pub inner: InnerSum,
    pub quad_tol: f64,
    pub total: BigReal,
    pub main: BigReal,
    pub boundary: BigReal,
    pub bulk_fluct: BigReal,
    pub residual: BigReal,
    pub e_at_p: BigReal,
    /// Sum of the two quadrature error estimates.
    pub quad_error: BigReal,
}

impl FluctDecomposition {
    pub fn budget(&self) -> f64 {
        BUDGET_FACTOR * self.quad_tol * self.total.abs().to_f64()
    }

    pub fn within_budget(&self) -> bool {
        self.residual.abs().to_f64() <= self.budget()
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.m,
            self.cutoff,
            self.total.to_decimal_string(),
            self.main.to_decimal_string(),
            self.boundary.to_decimal_string(),
            self.bulk_fluct.to_decimal_string(),
            self.residual.to_decimal_string(),
            self.e_at_p.to_decimal_string()
        )
    }
}

/// Decomposes `a_2m(P)` (or its truncated-`k` analogue) into
/// `main + boundary + bulkFluct`. `int theta phi'` is summed exactly over
/// prime gaps; only the smooth `int phi dx` and `int x phi' dx` use quadrature.
pub fn decompose(
    m: usize,
    cutoff: u64,
    table: &PrimeTable,
    quad_tol: f64,
    inner: InnerSum,
) -> Result<FluctDecomposition, FluctError> {
    check_cutoff(cutoff, table)?;
    let prec = table.precision();
    let w = WeightFunction::new(m, inner, prec)?;
    let two = BigReal::from_i64_with(2, prec);
    let p_real = BigReal::from_u64_with(cutoff, prec);

    let total = match inner {
        InnerSum::ClosedForm => pipeline_coefficient(m, cutoff, table)?,
        InnerSum::Truncated { .. } => stieltjes_sum(&w, cutoff, table),
    };

    let cfg = QuadratureConfig::new(quad_tol);
    let phi_int = integrate(&|x: &BigReal| w.phi_unchecked(x), &two, &p_real, &cfg, prec)?;
    let phi_two = w.phi_unchecked(&two);
    let main = phi_int.value + &two * &phi_two;

    let e_at_p = table.chebyshev_error_at(cutoff)?;
    let phi_p = w.phi_unchecked(&p_real);
    let boundary = &phi_p * &e_at_p;

    let n = table.count_up_to(cutoff);
    let primes = &table.primes()[..n];
    let theta = &table.theta_prefix()[..n];
    let phi_at_primes: Vec<BigReal> =
        primes.par_iter().map(|&p| w.phi_unchecked(&BigReal::from_u64_with(p, prec))).collect();
    let gap_terms: Vec<BigReal> = (0..n)
        .map(|i| {
            let next = if i + 1 < n { &phi_at_primes[i + 1] } else { &phi_p };
            &theta[i] * &(next - &phi_at_primes[i])
        })
        .collect();
    let theta_phi_prime = pairwise_sum(&gap_terms, &BigReal::zero_with(prec));
    let x_phi_int = integrate(&|x: &BigReal| x * &w.phi_derivative_unchecked(x), &two, &p_real, &cfg, prec)?;
    let bulk_fluct = x_phi_int.value - theta_phi_prime;

    let residual = &total - &main - &boundary - &bulk_fluct;
    Ok(FluctDecomposition {
        m,
        cutoff,
        inner,
        quad_tol,
        total,
        main,
        boundary,
        bulk_fluct,
        residual,
        e_at_p,
        quad_error: phi_int.error_estimate + x_phi_int.error_estimate,
    })
}

/// Empirical check of `|bulkFluct| <= c int_2^P x^(1/2) (log x)^2 |phi_2'(x)| dx`
/// with `c = sup |E(x)| / (x^(1/2) (log x)^2)` over `[2, P]`.
#[derive(Clone, Debug)]
pub struct RhBandCheck {
    pub c: f64,
    pub bulk_fluct: f64,
    pub bound: f64,
}

impl RhBandCheck {
    pub fn holds(&self) -> bool {
        self.bulk_fluct <= self.bound
    }
}

/// `c` is taken over each unit step `[n, n+1)`, where `E` runs from
/// `theta(n) - n` down to `theta(n) - n - 1`; dividing by the envelope at
/// `n` overestimates the step supremum.
pub fn rh_band_check(cutoff: u64, table: &PrimeTable, quad_tol: f64) -> Result<RhBandCheck, FluctError> {
    let d = decompose(1, cutoff, table, quad_tol, InnerSum::ClosedForm)?;
    let envelope = |x: f64| x.sqrt() * x.ln().powi(2);
    let mut c = 0.0f64;
    for n in 2..cutoff.max(3) {
        let th = table.theta_at(n).to_f64();
        let e = (th - n as f64).abs().max((th - n as f64 - 1.0).abs());
        c = c.max(e / envelope(n as f64));
    }
    let prec = table.precision();
    let w = WeightFunction::new(1, InnerSum::ClosedForm, prec)?;
    let two = BigReal::from_i64_with(2, prec);
    let integrand = |x: &BigReal| {
        let l = x.ln().expect("x >= 2");
        x.sqrt().expect("x >= 2") * &l * &l * w.phi_derivative_unchecked(x).abs()
    };
    let weight = integrate(&integrand, &two, &BigReal::from_u64_with(cutoff, prec), &QuadratureConfig::new(1e-10), prec)?;
    Ok(RhBandCheck { c, bulk_fluct: d.bulk_fluct.abs().to_f64(), bound: c * weight.value.to_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::default()
    }

    fn real(v: &str) -> BigReal {
        BigReal::parse(v, prec()).unwrap()
    }

    const A2_AT_2: &str = "1.98010078038562763046420633318771973452680960083";

    #[test]
    fn phi_examples() {
        let w = WeightFunction::new(1, InnerSum::ClosedForm, prec()).unwrap();
        let at4 = w.phi(&BigReal::from_i64_with(4, prec())).unwrap();
        let log4 = real("1.38629436111989061883446424291635313615100026872");
        assert!((at4 - log4).abs().to_f64() < 1e-45);
        for x in [2, 10, 100] {
            assert!(w.phi(&BigReal::from_i64_with(x, prec())).unwrap().is_positive());
        }
        assert!(matches!(w.phi(&BigReal::one_with(prec())), Err(FluctError::BelowDomain(_))));
        assert!(matches!(WeightFunction::new(0, InnerSum::ClosedForm, prec()), Err(FluctError::BadIndex)));
    }

    #[test]
    fn derivative_sign_and_finiteness() {
        let w = WeightFunction::new(1, InnerSum::ClosedForm, prec()).unwrap();
        assert!(w.phi_derivative(&BigReal::from_i64_with(1_000_000, prec())).unwrap().is_negative());
        assert!(w.phi_derivative(&BigReal::from_i64_with(2, prec())).unwrap().to_f64().is_finite());
    }

    #[test]
    fn single_atom_closure() {
        let table = PrimeTable::new(10, prec()).unwrap();
        let d = decompose(1, 2, &table, DEFAULT_QUAD_TOL, InnerSum::ClosedForm).unwrap();
        assert!(((&d.total - &real(A2_AT_2)) / real(A2_AT_2)).abs().to_f64() < 1e-45);
        let sum = &d.main + &d.boundary + d.bulk_fluct.clone();
        assert!(((sum - real(A2_AT_2)) / real(A2_AT_2)).abs().to_f64() < 1e-45);
        let s = stieltjes_identity_check(2, 2, &table).unwrap();
        assert!(s.relative() < 1e-70);
    }

    #[test]
    fn closure_at_one_hundred() {
        let table = PrimeTable::new(100, prec()).unwrap();
        for m in 1..=2 {
            let d = decompose(m, 100, &table, DEFAULT_QUAD_TOL, InnerSum::ClosedForm).unwrap();
            assert!(d.within_budget(), "m={m} residual {}", d.residual);
        }
        assert!(stieltjes_identity_check(1, 100, &table).unwrap().relative() < 1e-25);
    }

    #[test]
    fn k1_only_closes_too() {
        let table = PrimeTable::new(100, prec()).unwrap();
        let d = decompose(1, 100, &table, DEFAULT_QUAD_TOL, InnerSum::Truncated { kmax: 1 }).unwrap();
        assert!(d.within_budget());
        let full = decompose(1, 100, &table, DEFAULT_QUAD_TOL, InnerSum::ClosedForm).unwrap();
        assert!(d.total < full.total);
    }

    #[test]
    fn boundary_sign_tracks_chebyshev_error() {
        let table = PrimeTable::new(200, Precision(128)).unwrap();
        for p in [2u64, 3, 5, 11, 19, 97, 113, 200] {
            let d = decompose(1, p, &table, 1e-10, InnerSum::ClosedForm).unwrap();
            assert_eq!(d.boundary.is_negative(), d.e_at_p.is_negative(), "P={p}");
        }
    }

    #[test]
    fn csv_row_shape() {
        let table = PrimeTable::new(10, Precision(128)).unwrap();
        let d = decompose(1, 10, &table, 1e-10, InnerSum::ClosedForm).unwrap();
        let row = d.csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("1,10,"));
    }

    #[test]
    fn cutoff_outside_table_is_rejected() {
        let table = PrimeTable::new(10, Precision(128)).unwrap();
        assert!(matches!(decompose(1, 11, &table, 1e-10, InnerSum::ClosedForm), Err(FluctError::Prime(_))));
        assert!(matches!(stieltjes_identity_check(1, 1, &table), Err(FluctError::Prime(_))));
    }
}
