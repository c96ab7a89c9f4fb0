use fgzeta::fluctuation::{
    decompose, rh_band_check, stieltjes_identity_check, InnerSum, WeightFunction, DEFAULT_QUAD_TOL,
};
use fgzeta::primes::PrimeTable;
use fgzeta::ring::{BigReal, Precision};

fn prec() -> Precision {
    Precision::default()
}

#[test]
fn derivative_matches_central_differences() {
    let p = prec();
    let h = BigReal::parse("1e-4", p).unwrap();
    let two = BigReal::from_i64_with(2, p);
    for m in 1..=3 {
        for inner in [InnerSum::ClosedForm, InnerSum::Truncated { kmax: 3 }] {
            let w = WeightFunction::new(m, inner, p).unwrap();
            for x in ["2.5", "10", "137", "4000", "1e5"] {
                let x = BigReal::parse(x, p).unwrap();
                let fd = (w.phi(&(&x + &h)).unwrap() - w.phi(&(&x - &h)).unwrap()) / (&two * &h);
                let exact = w.phi_derivative(&x).unwrap();
                // error of the central difference is h^2 |phi'''| / 6
                let err = (fd - &exact).abs().to_f64();
                assert!(err <= 1e-6 * exact.abs().to_f64().max(1e-3), "m={m} x={x} err={err:e}");
            }
        }
    }
}

#[test]
fn derivative_error_shrinks_quadratically() {
    let p = prec();
    let w = WeightFunction::new(1, InnerSum::ClosedForm, p).unwrap();
    let x = BigReal::from_i64_with(10, p);
    let exact = w.phi_derivative(&x).unwrap();
    let err = |h: &str| {
        let h = BigReal::parse(h, p).unwrap();
        let fd = (w.phi(&(&x + &h)).unwrap() - w.phi(&(&x - &h)).unwrap()) / (BigReal::from_i64_with(2, p) * &h);
        (fd - &exact).abs().to_f64()
    };
    let ratio = err("1e-3") / err("1e-4");
    assert!((90.0..110.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn stieltjes_identity_is_exact() {
    let table = PrimeTable::new(1000, prec()).unwrap();
    for m in 1..=3 {
        for cutoff in [2u64, 100, 1000] {
            let s = stieltjes_identity_check(m, cutoff, &table).unwrap();
            assert!(s.relative() < 1e-25, "m={m} P={cutoff}");
        }
    }
}

#[test]
fn closure_is_independent_of_requested_tolerance() {
    let table = PrimeTable::new(2000, prec()).unwrap();
    for tol in [1e-8, 1e-12, 1e-30] {
        let d = decompose(2, 2000, &table, tol, InnerSum::ClosedForm).unwrap();
        assert!(d.within_budget(), "tol {tol:e}: residual {}", d.residual);
    }
}

#[test]
fn decomposition_at_ten_thousand() {
    let table = PrimeTable::new(10_000, prec()).unwrap();
    let d = decompose(1, 10_000, &table, DEFAULT_QUAD_TOL, InnerSum::ClosedForm).unwrap();
    assert!(d.residual.abs().to_f64() <= 10.0 * 1e-12 * d.total.abs().to_f64());
    assert!(d.e_at_p.is_negative() && d.boundary.is_negative());
}

#[test]
fn empirical_envelope_bound_holds() {
    let table = PrimeTable::new(20_000, Precision(128)).unwrap();
    for cutoff in [1000u64, 20_000] {
        let band = rh_band_check(cutoff, &table, 1e-10).unwrap();
        assert!(band.c > 0.0 && band.holds(), "P={cutoff}: {band:?}");
    }
}
