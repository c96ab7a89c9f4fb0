//! Cumulant table of the cutoff zeta at one `P`: the evenized log-series,
//! `sigma`, the normalized cumulants and the normalized expansion.
//!
//! ```text
//! cargo run --release --example cutoff_cumulants -- 1000 12
//! ```

use fgzeta::ring::Precision;
use fgzeta::zeta::{gaussian_deviation, run_pipeline_at};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let cutoff: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1000);
    let order: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(12);
    let run = run_pipeline_at(cutoff, order, Precision::default())?;

    println!("P = {cutoff}, order {order}");
    for (n, a) in &run.table.a {
        println!("  a{n:<3} {}", a.to_decimal_digits(25));
    }
    println!("  sigma {}", run.table.sigma.to_decimal_digits(25));
    for (n, k) in &run.table.kappa {
        println!("  kappa{n:<3} {}", k.to_decimal_digits(25));
    }
    println!("normalized log-series:");
    for (n, c) in run.normalized.coeffs().iter().enumerate().filter(|(n, _)| n % 2 == 0) {
        println!("  u^{n:<3} {}", c.to_decimal_digits(25));
    }
    println!("gaussian deviation {}", gaussian_deviation(&run.normalized, run.table.max_k()).to_decimal_digits(12));
    println!("\n{}", serde_json::to_string_pretty(&run.table.to_json())?);
    Ok(())
}
