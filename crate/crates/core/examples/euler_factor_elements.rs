//! Euler factors as points of the multiplicative formal group: each prime
//! gives `X_p = -p^(-1/2-u)`, and `log(1 + X)` turns the Euler product into
//! a sum. The product route and the Eulerian closed-form route agree.
//!
//! ```text
//! cargo run --release --example euler_factor_elements -- 50 8
//! ```

use fgzeta::formal_group::{euler_factor_log_series, fgm_log, truncated_euler_product, EulerFactorElement};
use fgzeta::primes::{sieve, PrimeTable};
use fgzeta::ring::{BigReal, Precision};
use fgzeta::series::TruncatedSeries;
use fgzeta::zeta::log_zeta_cutoff;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let cutoff: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(50);
    let order: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(8);
    let prec = Precision::default();

    let x2 = EulerFactorElement::new(2, order, prec);
    println!("X_2 = {:?}", x2.coord.coeffs().iter().take(4).map(|c| c.to_decimal_digits(10)).collect::<Vec<_>>());
    let one_factor = euler_factor_log_series(2, order, None, prec);
    println!("-log(1 + X_2) closed form vs series: {:e}", (&x2.neg_log() - &one_factor).max_abs_coeff());

    let primes = sieve(cutoff);
    let product = truncated_euler_product(&primes, order, prec);
    let via_product = fgm_log(&(&product - &TruncatedSeries::one(&prec, order)))?;
    let via_sum = primes
        .iter()
        .fold(TruncatedSeries::<BigReal>::zero(&prec, order), |acc, &p| &acc + &EulerFactorElement::new(p, order, prec).neg_log());
    let table = PrimeTable::new(cutoff, prec)?;
    let closed = log_zeta_cutoff(cutoff, order, &table)?.series;

    println!("P = {cutoff}: {} primes", primes.len());
    println!("  log of product vs sum of logs: {:e}", (&via_product - &via_sum).max_abs_coeff());
    println!("  sum of logs vs closed form:    {:e}", (&via_sum - &closed).max_abs_coeff());
    for n in 0..=order.min(4) {
        println!("  u^{n} {}", closed.coeff(n).to_decimal_digits(30));
    }
    Ok(())
}
