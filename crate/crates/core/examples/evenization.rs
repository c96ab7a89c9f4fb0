//! Evenization: `Z = Xi * exp(O)` with `log Xi` even and `O` odd, first on
//! an exact rational series and then on the cutoff zeta itself.
//!
//! ```text
//! cargo run --release --example evenization
//! ```

use fgzeta::ring::{Precision, Rational};
use fgzeta::series::TruncatedSeries;
use fgzeta::zeta::{check_factorization, evenize, evenize_product, log_zeta_cutoff};
use fgzeta::primes::PrimeTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 10;
    let log_z: TruncatedSeries<Rational> = TruncatedSeries::from_coeffs(
        (0..=order as i64).map(|n| Rational::new((n * n - 3 * n).into(), (n + 1).into())).collect(),
    );
    let split = evenize(&log_z);
    println!("log Z      {:?}", log_z.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("log Xi     {:?}", split.log_xi.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("odd part   {:?}", split.odd_removed.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("log Xi even: {}, reconstruct exact: {}", split.log_xi.is_even(), split.reconstruct() == log_z);

    let z = log_z.exp()?;
    let (xi, odd) = evenize_product(&z)?;
    let (exact, _) = check_factorization(&z, &xi, &odd)?;
    println!("Z = Xi exp(O) coefficient-exact: {exact}");

    let prec = Precision::default();
    let table = PrimeTable::new(100, prec)?;
    let expansion = log_zeta_cutoff(100, order, &table)?;
    let completed = expansion.evenize();
    println!("\nP = 100: log zeta_P(1/2 + u) coefficients vs evenized");
    for n in 0..=order {
        println!(
            "  u^{n:<2} {:>28}  {:>28}",
            expansion.series.coeff(n).to_decimal_digits(16),
            completed.log_xi.coeff(n).to_decimal_digits(16)
        );
    }
    Ok(())
}
