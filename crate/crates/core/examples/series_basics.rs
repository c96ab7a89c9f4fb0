//! Truncated power series over exact rationals and big reals.
//!
//! ```text
//! cargo run --example series_basics
//! ```

use fgzeta::json::AnySeries;
use fgzeta::ring::{BigReal, Coeff, Precision, Rational};
use fgzeta::series::TruncatedSeries;

fn show(label: &str, s: &TruncatedSeries<Rational>) {
    let terms: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    println!("{label:<22} [{}]", terms.join(", "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 8;
    let u = TruncatedSeries::<Rational>::variable(&(), order);
    let one = TruncatedSeries::one(&(), order);

    let e = u.exp()?;
    show("exp(u)", &e);
    show("log(exp(u))", &e.ln()?);

    let mercator = (&one + &u).ln()?;
    show("log(1+u)", &mercator);
    show("even part", &mercator.even_part());
    show("odd part", &mercator.odd_part());
    show("1/(1-u)", &(&one - &u).inverse()?);

    let half = Rational::from_ratio(&(), 1, 2);
    let p = TruncatedSeries::from_coeffs(vec![Rational::zero(&()), Rational::one(&()), -half.clone()]);
    println!("u - u^2/2 at 1/2        {}", p.evaluate(&half));
    show("u - u^2/2 at u -> -u", &p.scale_variable(&Rational::from_i64(&(), -1)));

    // the same expansion in 256-bit floating point
    let prec = Precision::default();
    let ur = TruncatedSeries::<BigReal>::variable(&prec, 6);
    let er = ur.exp()?;
    println!("exp(u) coefficient u^6  {}", er.coeff(6));
    println!("round trip error        {:e}", (&er.ln()? - &ur).max_abs_coeff());

    let doc = AnySeries::Rational(mercator.truncate(4)).to_json_string();
    println!("JSON                    {doc}");
    Ok(())
}
