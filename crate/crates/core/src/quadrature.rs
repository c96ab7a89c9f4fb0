//! Adaptive Gauss–Legendre quadrature at working precision.

use rayon::prelude::*;
use thiserror::Error;

use crate::ring::{BigReal, Precision};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("tolerance {requested:e} not met: achieved error estimate {achieved:e} over {intervals} intervals")]
    ToleranceUnmet { requested: f64, achieved: f64, intervals: usize },
    #[error("bad integration interval [{a}, {b}]")]
    BadInterval { a: String, b: String },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<BigReal>,
    weights: Vec<BigReal>,
    precision: Precision,
}

fn legendre_with_derivative(n: usize, x: &BigReal, prec: Precision) -> (BigReal, BigReal) {
    let one = BigReal::one_with(prec);
    let mut prev = one.clone();
    let mut cur = x.clone();
    for k in 1..n {
        let next = (BigReal::from_u64_with(2 * k as u64 + 1, prec) * x * &cur
            - BigReal::from_u64_with(k as u64, prec) * &prev)
            / BigReal::from_u64_with(k as u64 + 1, prec);
        prev = cur;
        cur = next;
    }
    let d = BigReal::from_u64_with(n as u64, prec) * (x * &cur - &prev) / (x * x - &one);
    (cur, d)
}

impl GaussLegendre {
    pub fn new(n: usize, prec: Precision) -> Self {
        assert!(n >= 2, "need at least two nodes");
        let tiny = prec.epsilon() * BigReal::from_i64_with(16, prec);
        let one = BigReal::one_with(prec);
        let two = BigReal::from_i64_with(2, prec);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 1..=n {
            let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut x = BigReal::from_f64(guess, prec).expect("finite");
            for _ in 0..64 {
                let (p, d) = legendre_with_derivative(n, &x, prec);
                let step = p / &d;
                x = x - &step;
                if step.abs() <= tiny {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, &x, prec);
            let w = &two / ((&one - &x * &x) * &d * &d);
            nodes.push(x);
            weights.push(w);
        }
        GaussLegendre { nodes, weights, precision: prec }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Rule applied on `[a, b]`; also returns `sum |w f|` for the roundoff floor.
    pub fn apply<F: Fn(&BigReal) -> BigReal>(&self, f: &F, a: &BigReal, b: &BigReal) -> (BigReal, BigReal) {
        let two = BigReal::from_i64_with(2, self.precision);
        let half = (b - a) / &two;
        let mid = (a + b) / &two;
        let mut sum = BigReal::zero_with(self.precision);
        let mut mass = BigReal::zero_with(self.precision);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let fx = f(&(&mid + &(&half * x)));
            let t = w * &fx;
            mass = mass + t.abs();
            sum = sum + t;
        }
        (sum * &half, mass * half.abs())
    }
}

/// Settings for [`integrate`].
#[derive(Clone, Debug)]
pub struct QuadratureConfig {
    /// Accept when the error estimate is `<= tol * (1 + |I|)`.
    pub tol: f64,
    pub points: usize,
    pub max_intervals: usize,
}

impl QuadratureConfig {
    pub fn new(tol: f64) -> Self {
        QuadratureConfig { tol, points: 20, max_intervals: 4096 }
    }
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: BigReal,
    pub error_estimate: BigReal,
    pub intervals: usize,
}

#[derive(Clone, Debug)]
struct Piece {
    a: BigReal,
    b: BigReal,
    value: BigReal,
    error: BigReal,
    floor: BigReal,
}

fn evaluate_piece<F: Fn(&BigReal) -> BigReal>(rule: &GaussLegendre, f: &F, a: BigReal, b: BigReal) -> Piece {
    let prec = rule.precision;
    let mid = (&a + &b) / BigReal::from_i64_with(2, prec);
    let (whole, _) = rule.apply(f, &a, &b);
    let (left, m1) = rule.apply(f, &a, &mid);
    let (right, m2) = rule.apply(f, &mid, &b);
    let value = left + right;
    let error = (&value - &whole).abs();
    let floor = (m1 + m2) * prec.epsilon() * BigReal::from_i64_with(1 << 10, prec);
    Piece { a, b, value, error, floor }
}

fn initial_breaks(a: &BigReal, b: &BigReal, prec: Precision) -> Vec<BigReal> {
    let two = BigReal::from_i64_with(2, prec);
    let mut out = vec![a.clone()];
    // geometric pieces when the interval sits on the positive axis
    if a.is_positive() {
        let mut x = a * &two;
        while x < *b {
            out.push(x.clone());
            x = x * &two;
        }
    }
    out.push(b.clone());
    out
}

/// Adaptive integration of a smooth `f` over `[a, b]`. Pieces whose
/// interval-halving estimate exceeds their share of the budget are bisected
/// until the total estimate meets the tolerance, the estimate stalls at the
/// roundoff floor, or `max_intervals` is reached.
pub fn integrate<F>(f: &F, a: &BigReal, b: &BigReal, cfg: &QuadratureConfig, prec: Precision) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(&BigReal) -> BigReal + Sync,
{
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        return Err(QuadratureError::BadTolerance(cfg.tol));
    }
    if a > b {
        return Err(QuadratureError::BadInterval { a: a.to_decimal_digits(12), b: b.to_decimal_digits(12) });
    }
    if a == b {
        let zero = BigReal::zero_with(prec);
        return Ok(QuadratureResult { value: zero.clone(), error_estimate: zero, intervals: 0 });
    }
    let rule = GaussLegendre::new(cfg.points, prec);
    let breaks = initial_breaks(a, b, prec);
    let mut pieces: Vec<Piece> = breaks
        .par_windows(2)
        .map(|w| evaluate_piece(&rule, f, w[0].clone(), w[1].clone()))
        .collect();
    let tol = BigReal::from_f64(cfg.tol, prec).expect("finite");
    let one = BigReal::one_with(prec);
    loop {
        let zero = BigReal::zero_with(prec);
        let value = pieces.iter().fold(zero.clone(), |acc, p| acc + &p.value);
        let error = pieces.iter().fold(zero, |acc, p| acc + p.error.clone().max(p.floor.clone()));
        let budget = &tol * (&one + value.abs());
        if error <= budget {
            return Ok(QuadratureResult { value, error_estimate: error, intervals: pieces.len() });
        }
        let share = &budget / BigReal::from_u64_with(pieces.len() as u64, prec);
        let split: Vec<bool> = pieces.iter().map(|p| p.error > share && p.error > p.floor).collect();
        let count = split.iter().filter(|s| **s).count();
        if count == 0 || pieces.len() + count > cfg.max_intervals {
            return Err(QuadratureError::ToleranceUnmet {
                requested: cfg.tol,
                achieved: error.to_f64() / (1.0 + value.abs().to_f64()),
                intervals: pieces.len(),
            });
        }
        let two = BigReal::from_i64_with(2, prec);
        pieces = pieces
            .into_par_iter()
            .zip(split.into_par_iter())
            .flat_map_iter(|(p, s)| {
                if s {
                    let mid = (&p.a + &p.b) / &two;
                    vec![evaluate_piece(&rule, f, p.a.clone(), mid.clone()), evaluate_piece(&rule, f, mid, p.b)]
                } else {
                    vec![p]
                }
            })
            .collect();
    }
}
