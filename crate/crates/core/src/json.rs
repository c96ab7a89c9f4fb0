//! JSON form of a truncated series:
//! `{"order": N, "ring": "rational"|"bigreal", "coeffs": [...]}`.
//!
//! Rational coefficients are `"num/den"` (or bare integers), big-real
//! coefficients are decimal strings.

use serde::{Deserialize, Serialize};

use crate::ring::{BigReal, Precision, Rational};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Serialize, Deserialize)]
struct SeriesDoc {
    order: usize,
    ring: String,
    coeffs: Vec<String>,
}

/// A series whose coefficient ring is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySeries {
    Rational(TruncatedSeries<Rational>),
    BigReal(TruncatedSeries<BigReal>),
}

impl AnySeries {
    pub fn ring_tag(&self) -> &'static str {
        match self {
            AnySeries::Rational(_) => "rational",
            AnySeries::BigReal(_) => "bigreal",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnySeries::Rational(s) => s.order(),
            AnySeries::BigReal(s) => s.order(),
        }
    }

    pub fn add(&self, other: &AnySeries) -> Result<AnySeries, SeriesError> {
        match (self, other) {
            (AnySeries::Rational(a), AnySeries::Rational(b)) => Ok(AnySeries::Rational(a + b)),
            (AnySeries::BigReal(a), AnySeries::BigReal(b)) => Ok(AnySeries::BigReal(a + b)),
            _ => Err(SeriesError::RingMismatch),
        }
    }

    pub fn mul(&self, other: &AnySeries) -> Result<AnySeries, SeriesError> {
        match (self, other) {
            (AnySeries::Rational(a), AnySeries::Rational(b)) => Ok(AnySeries::Rational(a * b)),
            (AnySeries::BigReal(a), AnySeries::BigReal(b)) => Ok(AnySeries::BigReal(a * b)),
            _ => Err(SeriesError::RingMismatch),
        }
    }

    pub fn even_part(&self) -> AnySeries {
        match self {
            AnySeries::Rational(s) => AnySeries::Rational(s.even_part()),
            AnySeries::BigReal(s) => AnySeries::BigReal(s.even_part()),
        }
    }

    pub fn odd_part(&self) -> AnySeries {
        match self {
            AnySeries::Rational(s) => AnySeries::Rational(s.odd_part()),
            AnySeries::BigReal(s) => AnySeries::BigReal(s.odd_part()),
        }
    }

    fn to_doc(&self) -> SeriesDoc {
        let coeffs = match self {
            AnySeries::Rational(s) => s.coeffs().iter().map(|c| c.to_string()).collect(),
            AnySeries::BigReal(s) => s.coeffs().iter().map(BigReal::to_decimal_string).collect(),
        };
        SeriesDoc { order: self.order(), ring: self.ring_tag().to_string(), coeffs }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("series document is plain data")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("series document is plain data")
    }

    /// Big-real coefficients are rounded to `prec`; rationals are exact.
    pub fn from_json_value(v: serde_json::Value, prec: Precision) -> Result<AnySeries, SeriesError> {
        let doc: SeriesDoc = serde_json::from_value(v).map_err(|e| SeriesError::Parse(e.to_string()))?;
        Self::from_doc(doc, prec)
    }

    pub fn from_json_str(s: &str, prec: Precision) -> Result<AnySeries, SeriesError> {
        let doc: SeriesDoc = serde_json::from_str(s).map_err(|e| SeriesError::Parse(e.to_string()))?;
        Self::from_doc(doc, prec)
    }

    fn from_doc(doc: SeriesDoc, prec: Precision) -> Result<AnySeries, SeriesError> {
        if doc.coeffs.len() != doc.order + 1 {
            return Err(SeriesError::Parse(format!(
                "order {} needs {} coefficients, found {}",
                doc.order,
                doc.order + 1,
                doc.coeffs.len()
            )));
        }
        match doc.ring.as_str() {
            "rational" => {
                let coeffs = doc
                    .coeffs
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AnySeries::Rational(TruncatedSeries::from_coeffs(coeffs)))
            }
            "bigreal" => {
                let coeffs = doc
                    .coeffs
                    .iter()
                    .map(|c| BigReal::parse(c, prec))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AnySeries::BigReal(TruncatedSeries::from_coeffs(coeffs)))
            }
            other => Err(SeriesError::UnknownRing(other.to_string())),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, SeriesError> {
    let s = s.trim();
    let bad = || SeriesError::Parse(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
