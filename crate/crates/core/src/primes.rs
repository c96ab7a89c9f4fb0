//! Primes, Chebyshev's `theta`, and the weighted prime sums behind every
//! cumulant coefficient.
//!
//! The inner sums `sum_{k>=1} k^m x^k` are evaluated through their Eulerian
//! closed form `x A_m(x) / (1 - x)^(m+1)`. Sums over primes use a fixed
//! balanced pairwise tree so serial and parallel runs agree bit for bit.

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::ring::{BigReal, Precision};

/// Largest supported sieve bound.
pub const MAX_PMAX: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PrimeError {
    #[error("cutoff {0} is below 2")]
    CutoffTooSmall(u64),
    #[error("cutoff {0} exceeds the sieve cap 2^31")]
    CutoffTooLarge(u64),
    #[error("x = {x} lies outside the covered range [2, {pmax}]")]
    OutOfRange { x: String, pmax: u64 },
    #[error("closed-form k-sum needs 0 < x < 1")]
    NotInUnitInterval,
}

/// All primes up to `pmax` (inclusive), by an odd-only sieve of Eratosthenes.
pub fn sieve(pmax: u64) -> Vec<u64> {
    if pmax < 2 {
        return Vec::new();
    }
    // slot i stands for 2i + 1
    let slots = ((pmax - 1) / 2 + 1) as usize;
    let mut composite = vec![false; slots];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= pmax as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < slots {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2];
    primes.extend((1..slots).filter(|&i| !composite[i]).map(|i| 2 * i as u64 + 1));
    primes
}

/// Primes up to a cutoff together with their logarithms and the running
/// values of `theta(x) = sum_{p <= x} log p`.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    pmax: u64,
    precision: Precision,
    primes: Vec<u64>,
    logs: Vec<BigReal>,
    theta_prefix: Vec<BigReal>,
}

impl PrimeTable {
    pub fn new(pmax: u64, precision: Precision) -> Result<Self, PrimeError> {
        if pmax < 2 {
            return Err(PrimeError::CutoffTooSmall(pmax));
        }
        if pmax > MAX_PMAX {
            return Err(PrimeError::CutoffTooLarge(pmax));
        }
        let primes = sieve(pmax);
        let logs: Vec<BigReal> = primes
            .par_iter()
            .map(|&p| BigReal::from_u64_with(p, precision).ln().expect("primes are positive"))
            .collect();
        let mut theta_prefix = Vec::with_capacity(logs.len());
        let mut acc = BigReal::zero_with(precision);
        for l in &logs {
            acc = acc + l;
            theta_prefix.push(acc.clone());
        }
        Ok(PrimeTable { pmax, precision, primes, logs, theta_prefix })
    }

    pub fn pmax(&self) -> u64 {
        self.pmax
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `log p` for each prime, aligned with [`PrimeTable::primes`].
    pub fn logs(&self) -> &[BigReal] {
        &self.logs
    }

    pub fn theta_prefix(&self) -> &[BigReal] {
        &self.theta_prefix
    }

    /// Number of primes `<= x`.
    pub fn count_up_to(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    /// `theta(x)` for integer `x`; zero below 2.
    pub fn theta_at(&self, x: u64) -> BigReal {
        match self.count_up_to(x) {
            0 => BigReal::zero_with(self.precision),
            n => self.theta_prefix[n - 1].clone(),
        }
    }

    /// `theta(x)` at a real point, resolved through the largest prime `<= x`.
    pub fn theta(&self, x: &BigReal) -> Result<BigReal, PrimeError> {
        self.check_range(x)?;
        let floor = x.floor_u64().expect("range checked");
        Ok(self.theta_at(floor))
    }

    /// `E(x) = theta(x) - x` for `2 <= x <= pmax`.
    pub fn chebyshev_error(&self, x: &BigReal) -> Result<BigReal, PrimeError> {
        let theta = self.theta(x)?;
        Ok(theta - x)
    }

    pub fn chebyshev_error_at(&self, x: u64) -> Result<BigReal, PrimeError> {
        self.chebyshev_error(&BigReal::from_u64_with(x, self.precision))
    }

    fn check_range(&self, x: &BigReal) -> Result<(), PrimeError> {
        let lo = BigReal::from_i64_with(2, self.precision);
        let hi = BigReal::from_u64_with(self.pmax, self.precision);
        if *x < lo || *x > hi {
            return Err(PrimeError::OutOfRange { x: x.to_decimal_digits(12), pmax: self.pmax });
        }
        Ok(())
    }
}

/// Row `m` of the Eulerian triangle: `A(m, 0..m-1)`, with row 0 = `(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianRow {
    pub m: usize,
    pub entries: Vec<BigUint>,
}

/// Builds row `m` by `A(m,j) = (j+1) A(m-1,j) + (m-j) A(m-1,j-1)`.
pub fn eulerian_row(m: usize) -> EulerianRow {
    let mut row = vec![BigUint::from(1u32)];
    for n in 2..=m {
        let mut next = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = BigUint::from(0u32);
            if j < row.len() {
                v += &row[j] * BigUint::from(j + 1);
            }
            if j >= 1 {
                v += &row[j - 1] * BigUint::from(n - j);
            }
            next.push(v);
        }
        row = next;
    }
    EulerianRow { m, entries: row }
}

/// Closed-form evaluator for `S_m(x) = sum_{k>=1} k^m x^k`, `0 < x < 1`,
/// with the Eulerian numerators precomputed for `m <= max_m`.
#[derive(Clone, Debug)]
pub struct KPowSums {
    rows: Vec<Vec<BigReal>>,
    precision: Precision,
}

impl KPowSums {
    pub fn new(max_m: usize, precision: Precision) -> Self {
        let rows = (0..=max_m)
            .map(|m| eulerian_row(m).entries.iter().map(|a| BigReal::from_biguint(a, precision)).collect())
            .collect();
        KPowSums { rows, precision }
    }

    pub fn max_m(&self) -> usize {
        self.rows.len() - 1
    }

    fn check(&self, x: &BigReal) -> Result<(), PrimeError> {
        if !x.is_positive() || *x >= BigReal::one_with(self.precision) {
            return Err(PrimeError::NotInUnitInterval);
        }
        Ok(())
    }

    /// `S_m(x)`; panics if `m` exceeds the precomputed range.
    pub fn eval(&self, m: usize, x: &BigReal) -> Result<BigReal, PrimeError> {
        self.check(x)?;
        let inv = (BigReal::one_with(self.precision) - x).recip();
        Ok(self.numerator(m, x) * inv.powi_self(m as i64 + 1))
    }

    /// `S_0(x), ..., S_{count-1}(x)` sharing the powers of `1/(1-x)`.
    pub fn eval_all(&self, count: usize, x: &BigReal) -> Result<Vec<BigReal>, PrimeError> {
        self.check(x)?;
        let inv = (BigReal::one_with(self.precision) - x).recip();
        let mut pow = inv.clone();
        let mut out = Vec::with_capacity(count);
        for m in 0..count {
            out.push(self.numerator(m, x) * &pow);
            pow = pow * &inv;
        }
        Ok(out)
    }

    // x * A_m(x) by Horner.
    fn numerator(&self, m: usize, x: &BigReal) -> BigReal {
        let row = &self.rows[m];
        let mut acc = row[row.len() - 1].clone();
        for a in row[..row.len() - 1].iter().rev() {
            acc = acc * x + a;
        }
        acc * x
    }
}

/// `sum_{k>=1} k^m x^k` for `0 < x < 1`, at the precision of `x`.
pub fn sum_k_pow(m: usize, x: &BigReal) -> Result<BigReal, PrimeError> {
    KPowSums::new(m, x.precision()).eval(m, x)
}

const LEAF: usize = 16;

/// Deterministic balanced pairwise summation. Panics on an empty slice
/// only if no precision is available, so callers pass a zero explicitly.
pub fn pairwise_sum(values: &[BigReal], zero: &BigReal) -> BigReal {
    if values.len() <= LEAF {
        return values.iter().fold(zero.clone(), |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid], zero) + pairwise_sum(&values[mid..], zero)
}

/// Same reduction tree as [`pairwise_sum`], with subtrees run on rayon.
pub fn pairwise_sum_par(values: &[BigReal], zero: &BigReal) -> BigReal {
    if values.len() <= 4096 {
        return pairwise_sum(values, zero);
    }
    let mid = values.len() / 2;
    let (a, b) = rayon::join(|| pairwise_sum_par(&values[..mid], zero), || pairwise_sum_par(&values[mid..], zero));
    a + b
}

/// Per-prime contributions to the log-zeta coefficients, for every prime in
/// a table up to some cutoff.
///
/// Column 0 holds `-log(1 - p^(-1/2))`; column `n >= 1` holds
/// `(log p)^n S_{n-1}(p^(-1/2))`. Summing a column over `p <= P` gives the
/// weighted prime sum for that cutoff.
#[derive(Clone, Debug)]
pub struct PrimeSumTable {
    primes: Vec<u64>,
    columns: Vec<Vec<BigReal>>,
    precision: Precision,
}

impl PrimeSumTable {
    /// Builds columns `0..=max_n` for every prime `<= cutoff`.
    pub fn build(table: &PrimeTable, cutoff: u64, max_n: usize) -> Result<Self, PrimeError> {
        if cutoff < 2 {
            return Err(PrimeError::CutoffTooSmall(cutoff));
        }
        if cutoff > table.pmax() {
            return Err(PrimeError::OutOfRange { x: cutoff.to_string(), pmax: table.pmax() });
        }
        let prec = table.precision();
        let count = table.count_up_to(cutoff);
        let kernel = KPowSums::new(max_n.saturating_sub(1), prec);
        let rows: Vec<Vec<BigReal>> = (0..count)
            .into_par_iter()
            .map(|i| prime_row(table.primes()[i], &table.logs()[i], max_n, &kernel, prec))
            .collect();
        let mut columns = vec![Vec::with_capacity(count); max_n + 1];
        for row in rows {
            for (n, v) in row.into_iter().enumerate() {
                columns[n].push(v);
            }
        }
        Ok(PrimeSumTable { primes: table.primes()[..count].to_vec(), columns, precision: prec })
    }

    pub fn max_n(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn cutoff_count(&self, cutoff: u64) -> usize {
        self.primes.partition_point(|&p| p <= cutoff)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.primes.last().copied()
    }

    /// Column `n` summed over primes `<= cutoff`.
    pub fn sum(&self, n: usize, cutoff: u64) -> BigReal {
        let count = self.cutoff_count(cutoff);
        pairwise_sum_par(&self.columns[n][..count], &BigReal::zero_with(self.precision))
    }

    /// Serial reduction over the same tree, for reproducibility checks.
    pub fn sum_serial(&self, n: usize, cutoff: u64) -> BigReal {
        let count = self.cutoff_count(cutoff);
        pairwise_sum(&self.columns[n][..count], &BigReal::zero_with(self.precision))
    }

    pub fn column(&self, n: usize) -> &[BigReal] {
        &self.columns[n]
    }
}

fn prime_row(p: u64, log_p: &BigReal, max_n: usize, kernel: &KPowSums, prec: Precision) -> Vec<BigReal> {
    let x = BigReal::from_u64_with(p, prec).sqrt().expect("positive").recip();
    let one = BigReal::one_with(prec);
    let mut row = Vec::with_capacity(max_n + 1);
    row.push(-(one - &x).ln().expect("p^(-1/2) < 1"));
    if max_n == 0 {
        return row;
    }
    let sums = kernel.eval_all(max_n, &x).expect("p^(-1/2) lies in (0,1)");
    let mut log_pow = log_p.clone();
    for s in sums {
        row.push(&log_pow * &s);
        log_pow = log_pow * log_p;
    }
    row
}

/// `sum_{p <= cutoff} (log p)^n sum_{k>=1} k^(n-1) p^(-k/2)` for `n >= 1`.
pub fn weighted_prime_sum(n: usize, table: &PrimeTable, cutoff: u64) -> Result<BigReal, PrimeError> {
    assert!(n >= 1, "weighted prime sums start at n = 1");
    Ok(PrimeSumTable::build(table, cutoff, n)?.sum(n, cutoff))
}
