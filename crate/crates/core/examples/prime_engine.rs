//! Sieve, Chebyshev theta, the error `E(x) = theta(x) - x` and Eulerian
//! closed forms for `sum k^m x^k`.
//!
//! ```text
//! cargo run --release --example prime_engine -- 100000
//! ```

use fgzeta::primes::{eulerian_row, sum_k_pow, PrimeTable};
use fgzeta::ring::{BigReal, Precision};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pmax: u64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(10_000);
    let prec = Precision::default();
    let table = PrimeTable::new(pmax, prec)?;
    println!("pi({pmax}) = {}", table.primes().len());
    println!("theta(10) = {}", table.theta_at(10).to_decimal_digits(30));
    println!("E(10)     = {}", table.chebyshev_error_at(10)?.to_decimal_digits(30));

    println!("{:>10} {:>14} {:>12}", "x", "E(x)", "theta(x)/x");
    let mut x = 10u64;
    while x <= pmax {
        let e = table.chebyshev_error_at(x)?.to_f64();
        println!("{x:>10} {e:>14.4} {:>12.6}", table.theta_at(x).to_f64() / x as f64);
        x *= 10;
    }

    for m in [0usize, 1, 2, 3, 4] {
        let row: Vec<String> = eulerian_row(m).entries.iter().map(|a| a.to_string()).collect();
        println!("A({m}, .) = [{}]", row.join(", "));
    }
    let half = BigReal::one_with(prec) / BigReal::from_i64_with(2, prec);
    for m in 0..5 {
        println!("sum k^{m} 2^-k = {}", sum_k_pow(m, &half)?.to_decimal_digits(20));
    }
    Ok(())
}
