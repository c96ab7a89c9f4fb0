//! Truncated power series in one variable `u` over a [`Coeff`] ring.
//!
//! A series of order `N` stores `c_0..c_N`; everything above `u^N` is
//! unknown. Binary operations truncate to the smaller order.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::ring::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("coefficient rings differ")]
    RingMismatch,
    #[error("exp of a nonzero rational constant term is irrational")]
    IrrationalExp,
    #[error("log of a rational constant term other than 1 is irrational")]
    IrrationalLog,
    #[error("constant term is not invertible")]
    NonInvertibleConstant,
    #[error("log of a non-positive constant term")]
    NegativeConstant,
    #[error("unknown ring tag `{0}`")]
    UnknownRing(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C: Coeff> {
    coeffs: Vec<C>,
}

/// Context of the series ring: inner coefficient context plus truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCtx<C: Coeff> {
    pub inner: C::Ctx,
    pub order: usize,
}

impl<C: Coeff> TruncatedSeries<C> {
    /// Builds a series from `c_0..c_N`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(ctx: &C::Ctx, order: usize) -> Self {
        TruncatedSeries { coeffs: vec![C::zero(ctx); order + 1] }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(&c.ctx(), order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(ctx: &C::Ctx, order: usize) -> Self {
        Self::constant(C::one(ctx), order)
    }

    /// The series `u`.
    pub fn variable(ctx: &C::Ctx, order: usize) -> Self {
        Self::monomial(C::one(ctx), 1, order)
    }

    /// `c * u^k`, which is zero when `k > order`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(&c.ctx(), order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `u^n`; panics if `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn set_coeff(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    pub fn ring_ctx(&self) -> C::Ctx {
        self.coeffs[0].ctx()
    }

    /// Drops every coefficient above `order` (no-op when already lower).
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncatedSeries { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Coeff::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Coeff::is_zero)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C, C) -> C) -> Self {
        let n = self.order().min(other.order());
        let coeffs = self.coeffs[..=n]
            .iter()
            .zip(&other.coeffs[..=n])
            .map(|(a, b)| f(a.clone(), b.clone()))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Cauchy product truncated at the smaller order. Zero coefficients are
    /// skipped, which keeps sparse nested (multivariate) products cheap.
    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let ctx = self.ring_ctx();
        let mut out = vec![C::zero(&ctx); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = std::mem::replace(&mut out[i + j], C::zero(&ctx));
                out[i + j] = slot + a.clone() * b.clone();
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Formal derivative; the order drops by one (but never below zero).
    pub fn derivative(&self) -> Self {
        let ctx = self.ring_ctx();
        if self.order() == 0 {
            return Self::zero(&ctx, 0);
        }
        let coeffs = (1..=self.order())
            .map(|n| self.coeffs[n].clone() * C::from_i64(&ctx, n as i64))
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Term-wise antiderivative with zero constant; the order grows by one.
    pub fn integral(&self) -> Self {
        let ctx = self.ring_ctx();
        let mut coeffs = Vec::with_capacity(self.order() + 2);
        coeffs.push(C::zero(&ctx));
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() * C::from_ratio(&ctx, 1, n as i64 + 1));
        }
        TruncatedSeries { coeffs }
    }

    /// Formal exponential via `n e_n = sum_{k=1}^n k s_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let ctx = self.ring_ctx();
        let n = self.order();
        let mut e = Vec::with_capacity(n + 1);
        e.push(self.coeffs[0].exp_scalar()?);
        for m in 1..=n {
            let sum = (1..=m)
                .filter(|&k| !self.coeffs[k].is_zero())
                .fold(C::zero(&ctx), |acc, k| {
                    acc + self.coeffs[k].clone() * C::from_i64(&ctx, k as i64) * e[m - k].clone()
                });
            e.push(sum * C::from_ratio(&ctx, 1, m as i64));
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    /// Formal logarithm via `s L' = s'`.
    pub fn ln(&self) -> Result<Self, SeriesError> {
        let ctx = self.ring_ctx();
        let n = self.order();
        let s0_inv = self.coeffs[0].try_recip().ok_or(SeriesError::NonInvertibleConstant)?;
        let mut l = Vec::with_capacity(n + 1);
        l.push(self.coeffs[0].ln_scalar()?);
        for m in 1..=n {
            let conv = (1..m)
                .filter(|&k| !self.coeffs[m - k].is_zero())
                .fold(C::zero(&ctx), |acc, k| {
                    acc + l[k].clone() * C::from_i64(&ctx, k as i64) * self.coeffs[m - k].clone()
                });
            let lm = (self.coeffs[m].clone() - conv * C::from_ratio(&ctx, 1, m as i64)) * s0_inv.clone();
            l.push(lm);
        }
        Ok(TruncatedSeries { coeffs: l })
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let ctx = self.ring_ctx();
        let n = self.order();
        let s0_inv = self.coeffs[0].try_recip().ok_or(SeriesError::NonInvertibleConstant)?;
        let mut r: Vec<C> = Vec::with_capacity(n + 1);
        r.push(s0_inv.clone());
        for m in 1..=n {
            let conv = (1..=m)
                .filter(|&k| !self.coeffs[k].is_zero())
                .fold(C::zero(&ctx), |acc, k| acc + self.coeffs[k].clone() * r[m - k].clone());
            r.push(-(conv * s0_inv.clone()));
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    /// `(f(u) + f(-u)) / 2`: odd coefficients zeroed.
    pub fn even_part(&self) -> Self {
        self.parity_filter(0)
    }

    /// `(f(u) - f(-u)) / 2`: even coefficients zeroed.
    pub fn odd_part(&self) -> Self {
        self.parity_filter(1)
    }

    fn parity_filter(&self, keep: usize) -> Self {
        let ctx = self.ring_ctx();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == keep { c.clone() } else { C::zero(&ctx) })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// `s(lambda * u)`, i.e. `c_n -> c_n lambda^n`.
    pub fn scale_variable(&self, lambda: &C) -> Self {
        let ctx = self.ring_ctx();
        let mut pow = C::one(&ctx);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * pow.clone());
            pow = pow * lambda.clone();
        }
        TruncatedSeries { coeffs }
    }

    /// Horner evaluation of the stored polynomial at `x`.
    pub fn evaluate(&self, x: &C) -> C {
        self.evaluate_in(x, |c| c.clone())
    }

    /// Horner evaluation at an argument living in another ring `D`, with
    /// `lift` embedding the coefficients. Used to substitute series into series.
    pub fn evaluate_in<D: Coeff>(&self, x: &D, lift: impl Fn(&C) -> D) -> D {
        let mut acc = lift(&self.coeffs[self.order()]);
        for c in self.coeffs[..self.order()].iter().rev() {
            acc = acc * x.clone() + lift(c);
        }
        acc
    }

    /// Largest coefficient magnitude, for residual reports.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(Coeff::magnitude).fold(0.0, f64::max)
    }
}

impl<C: Coeff> Add for TruncatedSeries<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl<C: Coeff> Sub for TruncatedSeries<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl<C: Coeff> Mul for TruncatedSeries<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_series(&rhs)
    }
}

impl<C: Coeff> Neg for TruncatedSeries<C> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<C: Coeff> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn add(self, rhs: Self) -> TruncatedSeries<C> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<C: Coeff> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn sub(self, rhs: Self) -> TruncatedSeries<C> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<C: Coeff> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn mul(self, rhs: Self) -> TruncatedSeries<C> {
        self.mul_series(rhs)
    }
}

/// Series over a ring form a ring themselves; nesting gives multivariate
/// expansions with each variable truncated independently.
impl<C: Coeff> Coeff for TruncatedSeries<C> {
    type Ctx = SeriesCtx<C>;

    fn ctx(&self) -> SeriesCtx<C> {
        SeriesCtx { inner: self.ring_ctx(), order: self.order() }
    }

    fn from_i64(ctx: &SeriesCtx<C>, v: i64) -> Self {
        Self::constant(C::from_i64(&ctx.inner, v), ctx.order)
    }

    fn from_ratio(ctx: &SeriesCtx<C>, num: i64, den: i64) -> Self {
        Self::constant(C::from_ratio(&ctx.inner, num, den), ctx.order)
    }

    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }

    fn try_recip(&self) -> Option<Self> {
        self.inverse().ok()
    }

    fn exp_scalar(&self) -> Result<Self, SeriesError> {
        self.exp()
    }

    fn ln_scalar(&self) -> Result<Self, SeriesError> {
        self.ln()
    }

    fn magnitude(&self) -> f64 {
        self.max_abs_coeff()
    }
}
