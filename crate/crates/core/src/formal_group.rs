//! One-dimensional commutative formal group laws over `Q`.
//!
//! A law is an evaluator that combines two series; bivariate and trivariate
//! expansions are series whose coefficients are series, so `X` is the outer
//! variable and `Y` (then `Z`) the inner ones. Identities are compared on
//! monomials of total degree `<= N`.

use num_bigint::BigUint;
use thiserror::Error;

use crate::ring::{BigReal, Coeff, Precision, Rational};
use crate::series::{SeriesError, TruncatedSeries};

pub type Series = TruncatedSeries<Rational>;
pub type Bivariate = TruncatedSeries<Series>;
pub type Trivariate = TruncatedSeries<Bivariate>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormalGroupError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("law `{law}` fails the {axiom} axiom at monomial {monomial:?}")]
    AxiomViolated { law: String, axiom: &'static str, monomial: Vec<usize> },
    #[error("dF/dY(X,0) has constant term {0}, expected 1")]
    BadDerivativeConstant(String),
    #[error("coordinate change must satisfy f(0) = 0 and f'(0) = 1")]
    NotStrict,
    #[error("formal exponential needs a series with zero constant term")]
    NonZeroConstant,
}

/// A one-dimensional commutative formal group law `F(X, Y)`.
pub trait FormalGroupLaw {
    fn name(&self) -> &str;

    /// `F(x, y)` for series `x`, `y` over any coefficient ring.
    fn apply<C: Coeff>(&self, x: &TruncatedSeries<C>, y: &TruncatedSeries<C>) -> TruncatedSeries<C>;
}

/// `F(X, Y) = X + Y + XY`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MultiplicativeLaw;

/// `F(X, Y) = X + Y`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AdditiveLaw;

impl FormalGroupLaw for MultiplicativeLaw {
    fn name(&self) -> &str {
        "multiplicative"
    }

    fn apply<C: Coeff>(&self, x: &TruncatedSeries<C>, y: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        &(x + y) + &(x * y)
    }
}

impl FormalGroupLaw for AdditiveLaw {
    fn name(&self) -> &str {
        "additive"
    }

    fn apply<C: Coeff>(&self, x: &TruncatedSeries<C>, y: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        x + y
    }
}

pub fn multiplicative_law() -> MultiplicativeLaw {
    MultiplicativeLaw
}

pub fn additive_law() -> AdditiveLaw {
    AdditiveLaw
}

/// Walks the monomials of a (possibly nested) rational series.
pub trait Monomials {
    /// Calls `visit(exponents, coefficient)` for every stored monomial of
    /// total degree `<= budget`.
    fn visit_within(&self, budget: usize, path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize], &Rational));
}

impl Monomials for Rational {
    fn visit_within(&self, _: usize, path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize], &Rational)) {
        visit(path, self);
    }
}

impl<C: Coeff + Monomials> Monomials for TruncatedSeries<C> {
    fn visit_within(&self, budget: usize, path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize], &Rational)) {
        for (i, c) in self.coeffs().iter().enumerate().take(budget + 1) {
            path.push(i);
            c.visit_within(budget - i, path, visit);
            path.pop();
        }
    }
}

/// First nonzero monomial of total degree `<= budget`, if any.
pub fn first_nonzero<M: Monomials>(s: &M, budget: usize) -> Option<(Vec<usize>, Rational)> {
    let mut found = None;
    s.visit_within(budget, &mut Vec::new(), &mut |path, c| {
        if found.is_none() && !Coeff::is_zero(c) {
            found = Some((path.to_vec(), c.clone()));
        }
    });
    found
}

/// Largest `|coefficient|` over monomials of total degree `<= budget`.
pub fn max_abs_within<M: Monomials>(s: &M, budget: usize) -> Rational {
    let mut best = Rational::zero(&());
    s.visit_within(budget, &mut Vec::new(), &mut |_, c| {
        let a = num_traits::Signed::abs(c);
        if a > best {
            best = a;
        }
    });
    best
}

/// `X` as a bivariate series.
pub fn var_x(order: usize) -> Bivariate {
    TruncatedSeries::monomial(Series::one(&(), order), 1, order)
}

/// `Y` as a bivariate series.
pub fn var_y(order: usize) -> Bivariate {
    TruncatedSeries::constant(Series::variable(&(), order), order)
}

/// `f(X)` as a bivariate series.
pub fn lift_x(f: &Series, order: usize) -> Bivariate {
    let f = f.truncate(order);
    let coeffs = (0..=order)
        .map(|i| Series::constant(if i <= f.order() { f.coeff(i).clone() } else { Rational::zero(&()) }, order))
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

/// `f(Y)` as a bivariate series.
pub fn lift_y(f: &Series, order: usize) -> Bivariate {
    let mut inner = Series::zero(&(), order);
    for (i, c) in f.coeffs().iter().enumerate().take(order + 1) {
        inner.set_coeff(i, c.clone());
    }
    TruncatedSeries::constant(inner, order)
}

fn drop_above_total(b: &mut Bivariate, order: usize) {
    for i in 0..=b.order() {
        let mut inner = b.coeff(i).clone();
        for j in 0..=inner.order() {
            if i + j > order && !Coeff::is_zero(inner.coeff(j)) {
                inner.set_coeff(j, Rational::zero(&()));
            }
        }
        b.set_coeff(i, inner);
    }
}

/// `f(b)` for a bivariate `b` with zero constant term, keeping total degree `<= order`.
pub fn compose_bivariate(f: &Series, b: &Bivariate, order: usize) -> Bivariate {
    let lift = |c: &Rational| Bivariate::constant(Series::constant(c.clone(), order), order);
    let n = f.order();
    let mut acc = lift(f.coeff(n));
    for c in f.coeffs()[..n].iter().rev() {
        acc = &acc * b;
        drop_above_total(&mut acc, order);
        acc = &acc + &lift(c);
    }
    acc
}

/// Result of an axiom check for one law.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub identity: Option<Vec<usize>>,
    pub commutativity: Option<Vec<usize>>,
    pub associativity: Option<Vec<usize>>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.identity.is_none() && self.commutativity.is_none() && self.associativity.is_none()
    }

    fn first_failure(&self) -> Option<(&'static str, Vec<usize>)> {
        [("identity", &self.identity), ("commutativity", &self.commutativity), ("associativity", &self.associativity)]
            .into_iter()
            .find_map(|(name, m)| m.clone().map(|m| (name, m)))
    }
}

/// Checks `F(X,0) = X`, `F(0,Y) = Y`, `F(X,Y) = F(Y,X)` and associativity on
/// all monomials of total degree `<= order`. Each field holds the first
/// failing monomial, if any.
pub fn check_axioms<L: FormalGroupLaw>(law: &L, order: usize) -> AxiomReport {
    let u = Series::variable(&(), order);
    let zero = Series::zero(&(), order);
    let left = &law.apply(&u, &zero) - &u;
    let right = &law.apply(&zero, &u) - &u;
    let identity = first_nonzero(&left, order).or_else(|| first_nonzero(&right, order)).map(|(m, _)| m);

    let x = var_x(order);
    let y = var_y(order);
    let swapped = &law.apply(&x, &y) - &law.apply(&y, &x);
    let commutativity = first_nonzero(&swapped, order).map(|(m, _)| m);

    let ctx = x.ctx();
    let tx = Trivariate::monomial(Bivariate::one(&ctx.inner, order), 1, order);
    let ty = Trivariate::constant(x.clone(), order);
    let tz = Trivariate::constant(y.clone(), order);
    let lhs = law.apply(&tx, &law.apply(&ty, &tz));
    let rhs = law.apply(&law.apply(&tx, &ty), &tz);
    let associativity = first_nonzero(&(&lhs - &rhs), order).map(|(m, _)| m);

    AxiomReport { identity, commutativity, associativity }
}

/// The formal group logarithm `l_F` with `l_F'(0) = 1`, computed by
/// inverting `dF/dY(X, 0)` and integrating term-wise.
pub fn log_from_law<L: FormalGroupLaw>(law: &L, order: usize) -> Result<Series, FormalGroupError> {
    let report = check_axioms(law, order);
    if let Some((axiom, monomial)) = report.first_failure() {
        return Err(FormalGroupError::AxiomViolated { law: law.name().to_string(), axiom, monomial });
    }
    // Y only needs to be tracked to first order for dF/dY at Y = 0.
    let x = TruncatedSeries::monomial(Series::one(&(), 1), 1, order);
    let y = TruncatedSeries::constant(Series::variable(&(), 1), order);
    let f = law.apply(&x, &y);
    let derivative = Series::from_coeffs(f.coeffs().iter().map(|inner| inner.coeff(1).clone()).collect());
    if derivative.coeff(0) != &Rational::one(&()) {
        return Err(FormalGroupError::BadDerivativeConstant(derivative.coeff(0).to_string()));
    }
    let omega = derivative.inverse()?;
    Ok(omega.integral().truncate(order))
}

/// `l(F(X,Y)) - l(X) - l(Y)` on monomials of total degree `<= order`.
pub fn additivity_residual<L: FormalGroupLaw>(law: &L, log: &Series, order: usize) -> Bivariate {
    let x = var_x(order);
    let y = var_y(order);
    let combined = compose_bivariate(log, &law.apply(&x, &y), order);
    let mut r = &(&combined - &lift_x(log, order)) - &lift_y(log, order);
    drop_above_total(&mut r, order);
    r
}

/// `exp_x(t) = e^t - 1`, the compositional inverse of `log(1 + X)`.
pub fn fgm_exp<C: Coeff>(t: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>, FormalGroupError> {
    if !t.coeff(0).is_zero() {
        return Err(FormalGroupError::NonZeroConstant);
    }
    let e = t.exp()?;
    Ok(&e - &TruncatedSeries::one(&t.ring_ctx(), t.order()))
}

/// `l_x(X) = log(1 + X)` applied to a series argument.
pub fn fgm_log<C: Coeff>(x: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>, FormalGroupError> {
    let one = TruncatedSeries::one(&x.ring_ctx(), x.order());
    Ok((&one + x).ln()?)
}

/// Outcome of a strict isomorphism test.
#[derive(Clone, Debug, PartialEq)]
pub struct IsoCheck {
    pub holds: bool,
    /// Largest `|coefficient|` of `f(F(X,Y)) - G(f(X), f(Y))`.
    pub residual: Rational,
    pub first_failure: Option<Vec<usize>>,
}

/// Tests `f(F(X,Y)) = G(f(X), f(Y))` on monomials of total degree `<= order`.
pub fn check_strict_iso<F: FormalGroupLaw, G: FormalGroupLaw>(
    f: &Series,
    from: &F,
    to: &G,
    order: usize,
) -> Result<IsoCheck, FormalGroupError> {
    if f.order() < 1 || !Coeff::is_zero(f.coeff(0)) || f.coeff(1) != &Rational::one(&()) {
        return Err(FormalGroupError::NotStrict);
    }
    let x = var_x(order);
    let y = var_y(order);
    let lhs = compose_bivariate(f, &from.apply(&x, &y), order);
    let mut rhs = to.apply(&lift_x(f, order), &lift_y(f, order));
    drop_above_total(&mut rhs, order);
    let diff = &lhs - &rhs;
    let first_failure = first_nonzero(&diff, order).map(|(m, _)| m);
    Ok(IsoCheck { holds: first_failure.is_none(), residual: max_abs_within(&diff, order), first_failure })
}

/// `X_p(1/2 + u) = -p^(-(1/2 + u))` as a series in `u`.
#[derive(Clone, Debug)]
pub struct EulerFactorElement {
    pub p: u64,
    pub coord: TruncatedSeries<BigReal>,
}

impl EulerFactorElement {
    pub fn new(p: u64, order: usize, prec: Precision) -> Self {
        let log_p = BigReal::from_u64_with(p, prec).ln().expect("p >= 2");
        let x = BigReal::from_u64_with(p, prec).sqrt().expect("p >= 2").recip();
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = -x;
        for n in 0..=order {
            coeffs.push(term.clone());
            // d/du of p^(-u) brings down -log p
            term = -(term * &log_p) / BigReal::from_u64_with(n as u64 + 1, prec);
        }
        EulerFactorElement { p, coord: TruncatedSeries::from_coeffs(coeffs) }
    }

    /// `-l_x(X_p) = -log(1 - p^(-1/2 - u))`.
    pub fn neg_log(&self) -> TruncatedSeries<BigReal> {
        -fgm_log(&self.coord).expect("1 + X_p has constant term in (0,1)")
    }
}

/// Depth of the `k`-sum so the dropped tail sits below the working precision.
pub fn auto_kmax(p: u64, order: usize, prec: Precision) -> usize {
    let half_log2_p = (p as f64).log2() / 2.0;
    let target = prec.bits() as f64 + 16.0;
    let mut k = 1usize;
    while (k as f64) * half_log2_p - (order as f64) * (k as f64).log2() < target {
        k += 1;
    }
    k
}

/// Taylor expansion in `u` of `sum_{k<=kmax} (1/k) p^(-k(1/2+u))`.
pub fn euler_factor_log_series(p: u64, order: usize, kmax: Option<usize>, prec: Precision) -> TruncatedSeries<BigReal> {
    let kmax = kmax.unwrap_or_else(|| auto_kmax(p, order, prec));
    let log_p = BigReal::from_u64_with(p, prec).ln().expect("p >= 2");
    let x = BigReal::from_u64_with(p, prec).sqrt().expect("p >= 2").recip();
    let mut xk = Vec::with_capacity(kmax);
    let mut pow = x.clone();
    for _ in 0..kmax {
        xk.push(pow.clone());
        pow = pow * &x;
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact = BigUint::from(1u32);
    for n in 0..=order {
        if n > 0 {
            fact *= BigUint::from(n);
        }
        let inner = xk.iter().enumerate().fold(BigReal::zero_with(prec), |acc, (i, xp)| {
            let k = BigReal::from_u64_with(i as u64 + 1, prec);
            acc + k.powi_self(n as i64 - 1) * xp
        });
        let mag = log_p.powi_self(n as i64) * inner / BigReal::from_biguint(&fact, prec);
        coeffs.push(if n % 2 == 1 { -mag } else { mag });
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// `prod_{p in primes} (1 + X_p)^(-1)` as a series in `u`.
pub fn truncated_euler_product(primes: &[u64], order: usize, prec: Precision) -> TruncatedSeries<BigReal> {
    let one = TruncatedSeries::one(&prec, order);
    primes.iter().fold(one.clone(), |acc, &p| {
        let factor = &one + &EulerFactorElement::new(p, order, prec).coord;
        &acc * &factor.inverse().expect("1 - p^(-1/2) is invertible")
    })
}
