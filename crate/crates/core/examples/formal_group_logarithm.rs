//! Formal group laws: axioms, the logarithm from the invariant
//! differential, and strict isomorphisms.
//!
//! ```text
//! cargo run --example formal_group_logarithm -- 12
//! ```

use fgzeta::formal_group::{
    additive_law, additivity_residual, check_axioms, check_strict_iso, first_nonzero, log_from_law, multiplicative_law,
    FormalGroupLaw, Series,
};
use fgzeta::ring::{Coeff, Rational};
use fgzeta::series::TruncatedSeries;

/// `X + Y + 2XY`, isomorphic to the multiplicative law via `X -> 2X`.
struct Doubled;

impl FormalGroupLaw for Doubled {
    fn name(&self) -> &str {
        "X+Y+2XY"
    }

    fn apply<C: Coeff>(&self, x: &TruncatedSeries<C>, y: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        let xy = x * y;
        &(&(x + y) + &xy) + &xy
    }
}

fn coeffs(s: &Series) -> String {
    s.coeffs()[1..].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(8);
    let mult = multiplicative_law();
    let add = additive_law();

    for law in [mult.name(), add.name()] {
        let report = if law == "multiplicative" { check_axioms(&mult, order) } else { check_axioms(&add, order) };
        println!("{law:<15} axioms to order {order}: {}", if report.holds() { "hold" } else { "FAIL" });
    }

    let log = log_from_law(&mult, order)?;
    println!("log multiplicative: {}", coeffs(&log));
    let residual = additivity_residual(&mult, &log, order);
    println!("additivity residual zero: {}", first_nonzero(&residual, order).is_none());

    let iso = check_strict_iso(&log, &mult, &add, order)?;
    println!("log(1+X) intertwines multiplicative and additive: {}", iso.holds);

    let mut tweaked = log.clone();
    tweaked.set_coeff(3, tweaked.coeff(3).clone() + Rational::from_ratio(&(), 1, 7));
    let iso = check_strict_iso(&tweaked, &mult, &add, order)?;
    println!("tweaked u^3 coefficient: holds = {}, residual {}, first failure {:?}", iso.holds, iso.residual, iso.first_failure);

    let doubled = log_from_law(&Doubled, order)?;
    println!("log {}: {}", Doubled.name(), coeffs(&doubled));
    Ok(())
}
