//! Cumulants along a geometric grid of cutoffs with log-log slope fits.
//!
//! ```text
//! cargo run --release --example cumulant_decay_scan -- 1024 65536 7
//! ```

use fgzeta::report::{scan_fits, scan_runs, Format, Grid, ScanConfig};
use fgzeta::ring::Precision;
use fgzeta::zeta::gaussian_deviation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let pmin: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1 << 10);
    let pmax: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1 << 16);
    let points: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(7);
    let cfg = ScanConfig {
        pmin,
        pmax,
        grid: Grid::Geometric(points),
        order: 8,
        precision: Precision(128),
        format: Format::Csv,
        out: None,
    };
    let runs = scan_runs(&cfg)?;
    println!("{:>9} {:>14} {:>14} {:>14} {:>14}", "P", "a2", "sigma", "kappa4", "gaussDev");
    for r in &runs {
        println!(
            "{:>9} {:>14.6} {:>14.6} {:>14.6e} {:>14.6e}",
            r.table.cutoff.unwrap_or(0),
            r.table.a(2).unwrap().to_f64(),
            r.table.sigma.to_f64(),
            r.table.kappa(4).unwrap().to_f64(),
            gaussian_deviation(&r.normalized, r.table.max_k()).to_f64()
        );
    }
    for fit in scan_fits(&runs)? {
        println!("slope of log {:<18} vs log P: {:+.4} (r2 {:.5})", fit.label, fit.slope, fit.r2);
    }
    Ok(())
}
