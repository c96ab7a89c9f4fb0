//! Coefficient rings for truncated series.
//!
//! Two concrete rings are provided: exact rationals ([`Rational`]) for
//! algebraic identity checks, and configurable-precision binary floats
//! ([`BigReal`]) for prime-sum numerics. Series over series also form a
//! ring (see [`crate::series`]), which is how bivariate expansions are built.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::{DBig, FBig};
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive};

use crate::series::SeriesError;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

/// Default working precision for [`BigReal`], in mantissa bits.
pub const DEFAULT_PRECISION_BITS: usize = 256;

/// A commutative ring usable as series coefficients.
///
/// `Ctx` carries whatever is needed to manufacture constants in the ring:
/// nothing for rationals, the mantissa width for big floats, the truncation
/// order (plus inner context) for series.
pub trait Coeff:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn ctx(&self) -> Self::Ctx;

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(ctx: &Self::Ctx, num: i64, den: i64) -> Self;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 0)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }

    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, or `None` when the element is not a unit.
    fn try_recip(&self) -> Option<Self>;

    /// `exp` of a ring element, used for constant terms of series exponentials.
    fn exp_scalar(&self) -> Result<Self, SeriesError>;

    /// `log` of a ring element, used for constant terms of series logarithms.
    fn ln_scalar(&self) -> Result<Self, SeriesError>;

    /// A nonnegative size used for residual reporting.
    fn magnitude(&self) -> f64;
}

impl Coeff for Rational {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn from_i64(_: &(), v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(_: &(), num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn try_recip(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn exp_scalar(&self) -> Result<Self, SeriesError> {
        if num_traits::Zero::is_zero(self) {
            Ok(<Rational as num_traits::One>::one())
        } else {
            Err(SeriesError::IrrationalExp)
        }
    }

    fn ln_scalar(&self) -> Result<Self, SeriesError> {
        if num_traits::Zero::is_zero(self) {
            Err(SeriesError::NonInvertibleConstant)
        } else if num_traits::One::is_one(self) {
            Ok(<Rational as num_traits::Zero>::zero())
        } else {
            Err(SeriesError::IrrationalLog)
        }
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

type Repr = FBig<HalfEven, 2>;

/// Mantissa width in bits for [`BigReal`] values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision(pub usize);

impl Precision {
    pub fn bits(self) -> usize {
        self.0
    }

    /// Decimal digits needed to print a value without losing bits.
    pub fn decimal_digits(self) -> usize {
        (self.0 as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
    }

    /// `2^(-bits)`, the unit roundoff scale.
    pub fn epsilon(self) -> BigReal {
        BigReal::one_with(self).powi(2, -(self.0 as i64))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_PRECISION_BITS)
    }
}

/// Binary floating point with a fixed mantissa width and round-half-even.
///
/// Binary operations take the wider of the two operand precisions.
#[derive(Clone, Debug)]
pub struct BigReal(Repr);

impl BigReal {
    fn wrap(v: Repr, prec: Precision) -> Self {
        BigReal(v.with_precision(prec.0).value())
    }

    pub fn precision(&self) -> Precision {
        Precision(self.0.precision())
    }

    pub fn from_i64_with(v: i64, prec: Precision) -> Self {
        Self::wrap(Repr::from(v), prec)
    }

    pub fn from_u64_with(v: u64, prec: Precision) -> Self {
        Self::wrap(Repr::from(v), prec)
    }

    pub fn zero_with(prec: Precision) -> Self {
        Self::from_i64_with(0, prec)
    }

    pub fn one_with(prec: Precision) -> Self {
        Self::from_i64_with(1, prec)
    }

    /// Exact integer conversion followed by rounding to `prec`.
    pub fn from_biguint(v: &BigUint, prec: Precision) -> Self {
        Self::wrap(Repr::from(UBig::from_le_bytes(&v.to_bytes_le())), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: Precision) -> Self {
        let mag = Self::from_biguint(v.magnitude(), prec);
        if v.sign() == Sign::Minus {
            -mag
        } else {
            mag
        }
    }

    pub fn from_rational(v: &Rational, prec: Precision) -> Self {
        Self::from_bigint(v.numer(), prec) / Self::from_bigint(v.denom(), prec)
    }

    /// Exact binary conversion of an `f64`, then rounding to `prec`.
    pub fn from_f64(v: f64, prec: Precision) -> Option<Self> {
        Repr::try_from(v).ok().map(|r| Self::wrap(r, prec))
    }

    /// Parses a decimal string such as `-1.25e-3`.
    pub fn parse(s: &str, prec: Precision) -> Result<Self, SeriesError> {
        let d = DBig::from_str(s.trim()).map_err(|_| SeriesError::Parse(format!("bad decimal `{s}`")))?;
        let bin = d.with_rounding::<HalfEven>().with_base_and_precision::<2>(prec.0).value();
        Ok(Self::wrap(bin, prec))
    }

    /// Scientific decimal representation with enough digits to round-trip.
    pub fn to_decimal_string(&self) -> String {
        if self.0 == Repr::ZERO {
            return "0".to_string();
        }
        let digits = self.precision().decimal_digits();
        format!("{:e}", self.0.clone().with_base_and_precision::<10>(digits).value())
    }

    /// Scientific decimal representation with `digits` significant digits.
    pub fn to_decimal_digits(&self, digits: usize) -> String {
        if self.0 == Repr::ZERO {
            return "0".to_string();
        }
        format!("{:e}", self.0.clone().with_base_and_precision::<10>(digits).value())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Repr::ZERO
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Repr::ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Repr::ZERO
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn ln(&self) -> Result<Self, SeriesError> {
        if !self.is_positive() {
            return Err(SeriesError::NegativeConstant);
        }
        Ok(Self::wrap(self.0.ln(), self.precision()))
    }

    pub fn exp(&self) -> Self {
        Self::wrap(self.0.exp(), self.precision())
    }

    /// Square root; `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            None
        } else if self.is_zero() {
            Some(self.clone())
        } else {
            Some(Self::wrap(self.0.sqrt(), self.precision()))
        }
    }

    pub fn recip(&self) -> Self {
        Self::one_with(self.precision()) / self.clone()
    }

    /// `self^n` for a small integer exponent.
    pub fn powi_self(&self, n: i64) -> Self {
        Self::wrap(self.0.powi(IBig::from(n)), self.precision())
    }

    /// `base^n` at this value's precision.
    pub fn powi(&self, base: i64, n: i64) -> Self {
        Self::from_i64_with(base, self.precision()).powi_self(n)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor_u64(&self) -> Option<u64> {
        let f = self.0.floor();
        u64::try_from(f).ok()
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.0.cmp(&other.0))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

macro_rules! big_real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                BigReal(self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $trait<&'b BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'b BigReal) -> BigReal {
                BigReal(&self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                BigReal(&self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'a BigReal) -> BigReal {
                BigReal(self.0 $op &rhs.0)
            }
        }
    };
}

big_real_binop!(Add, add, +);
big_real_binop!(Sub, sub, -);
big_real_binop!(Mul, mul, *);
big_real_binop!(Div, div, /);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0.clone())
    }
}

impl Coeff for BigReal {
    type Ctx = Precision;

    fn ctx(&self) -> Precision {
        self.precision()
    }

    fn from_i64(ctx: &Precision, v: i64) -> Self {
        Self::from_i64_with(v, *ctx)
    }

    fn from_ratio(ctx: &Precision, num: i64, den: i64) -> Self {
        Self::from_i64_with(num, *ctx) / Self::from_i64_with(den, *ctx)
    }

    fn is_zero(&self) -> bool {
        BigReal::is_zero(self)
    }

    fn try_recip(&self) -> Option<Self> {
        if BigReal::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn exp_scalar(&self) -> Result<Self, SeriesError> {
        Ok(self.exp())
    }

    fn ln_scalar(&self) -> Result<Self, SeriesError> {
        if BigReal::is_zero(self) {
            Err(SeriesError::NonInvertibleConstant)
        } else {
            self.ln()
        }
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn transcendental_results_keep_precision() {
        let zero = BigReal::zero_with(p());
        let one = zero.exp();
        assert_eq!(one.precision(), p());
        assert_eq!(one.recip(), BigReal::one_with(p()));
        assert_eq!(BigReal::one_with(p()).ln().unwrap().precision(), p());
        assert_eq!(BigReal::from_i64_with(4, p()).sqrt().unwrap().precision(), p());
        assert_eq!(BigReal::from_i64_with(2, p()).powi_self(0).precision(), p());
    }

    #[test]
    fn integer_constants_carry_requested_precision() {
        let three = BigReal::from_i64_with(3, p());
        assert_eq!(three.precision(), p());
        let third = three.recip();
        assert_eq!(third.precision(), p());
        let back = third * BigReal::from_i64_with(3, p());
        let err = (back - BigReal::one_with(p())).abs();
        assert!(err < p().epsilon().powi_self(1) * BigReal::from_i64_with(4, p()));
    }

    #[test]
    fn decimal_round_trip() {
        let x = BigReal::from_i64_with(2, p()).ln().unwrap();
        let s = x.to_decimal_string();
        assert!(s.starts_with("6.931471805599453094172321214581765680755"), "{s}");
        let y = BigReal::parse(&s, p()).unwrap();
        let rel = ((x.clone() - y) / x).abs();
        assert!(rel.to_f64() < 1e-75);
        assert_eq!(BigReal::zero_with(p()).to_decimal_string(), "0");
    }

    #[test]
    fn ln_rejects_nonpositive() {
        assert!(BigReal::from_i64_with(-1, p()).ln().is_err());
        assert!(BigReal::zero_with(p()).ln().is_err());
    }

    #[test]
    fn rational_scalar_exp_log_rules() {
        let zero = Rational::zero(&());
        assert_eq!(zero.exp_scalar().unwrap(), Rational::one(&()));
        assert!(Rational::from_i64(&(), 2).exp_scalar().is_err());
        assert_eq!(Rational::one(&()).ln_scalar().unwrap(), Rational::zero(&()));
        assert_eq!(zero.ln_scalar(), Err(SeriesError::NonInvertibleConstant));
        assert_eq!(Rational::from_i64(&(), 3).ln_scalar(), Err(SeriesError::IrrationalLog));
    }

    #[test]
    fn rational_to_big_real() {
        let r = Rational::from_ratio(&(), -3, 8);
        assert_eq!(BigReal::from_rational(&r, p()).to_f64(), -0.375);
    }

    #[test]
    fn floor_of_real() {
        assert_eq!(BigReal::parse("10.999", p()).unwrap().floor_u64(), Some(10));
        assert_eq!(BigReal::from_i64_with(7, p()).floor_u64(), Some(7));
    }
}
