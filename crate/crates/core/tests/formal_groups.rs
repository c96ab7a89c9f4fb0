use proptest::prelude::*;

use fgzeta::formal_group::{
    additive_law, check_strict_iso, euler_factor_log_series, first_nonzero, fgm_log, log_from_law, multiplicative_law,
    truncated_euler_product, EulerFactorElement, FormalGroupLaw, Series,
};
use fgzeta::primes::{sieve, PrimeTable};
use fgzeta::ring::{BigReal, Coeff, Precision, Rational};
use fgzeta::series::TruncatedSeries;
use fgzeta::zeta::log_zeta_cutoff;

const ORDER: usize = 8;

fn mercator() -> Series {
    log_from_law(&multiplicative_law(), ORDER).unwrap()
}

struct Scaled(i64);

impl FormalGroupLaw for Scaled {
    fn name(&self) -> &str {
        "scaled"
    }
    fn apply<C: Coeff>(&self, x: &TruncatedSeries<C>, y: &TruncatedSeries<C>) -> TruncatedSeries<C> {
        let c = C::from_i64(&x.ring_ctx(), self.0);
        &(x + y) + &(x * y).map(|v| v.clone() * c.clone())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn only_the_logarithm_linearizes(tail in prop::collection::vec((-4i64..=4, 1i64..=4), ORDER - 1)) {
        let mut f = Series::variable(&(), ORDER);
        for (j, (n, d)) in tail.into_iter().enumerate() {
            f.set_coeff(j + 2, Rational::from_ratio(&(), n, d));
        }
        let iso = check_strict_iso(&f, &multiplicative_law(), &additive_law(), ORDER).unwrap();
        prop_assert_eq!(iso.holds, f == mercator());
    }

    #[test]
    fn scaled_laws_have_scaled_logarithms(c in prop::sample::select(vec![-3i64, -2, -1, 2, 3, 5])) {
        let log = log_from_law(&Scaled(c), ORDER).unwrap();
        for n in 1..=ORDER {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let expected = Rational::from_ratio(&(), sign, n as i64) * Rational::from_i64(&(), c).pow(n as i32 - 1);
            prop_assert_eq!(log.coeff(n), &expected);
        }
        prop_assert!(check_strict_iso(&log, &Scaled(c), &additive_law(), ORDER).unwrap().holds);
    }
}

#[test]
fn composition_of_isomorphisms() {
    // log(1+X) then the identity on the additive side still intertwines
    let log = mercator();
    let id = Series::variable(&(), ORDER);
    assert!(check_strict_iso(&id, &additive_law(), &additive_law(), ORDER).unwrap().holds);
    assert!(check_strict_iso(&log, &multiplicative_law(), &additive_law(), ORDER).unwrap().holds);
    assert!(!check_strict_iso(&log, &additive_law(), &additive_law(), ORDER).unwrap().holds);
}

#[test]
fn euler_elements_add_under_the_logarithm() {
    let prec = Precision(192);
    let order = 6;
    let xp = EulerFactorElement::new(3, order, prec);
    let xq = EulerFactorElement::new(7, order, prec);
    let combined = multiplicative_law().apply(&xp.coord, &xq.coord);
    let lhs = fgm_log(&combined).unwrap();
    let rhs = &fgm_log(&xp.coord).unwrap() + &fgm_log(&xq.coord).unwrap();
    assert!((&lhs - &rhs).max_abs_coeff() < 1e-50);
}

#[test]
fn product_route_matches_closed_form() {
    let prec = Precision::default();
    let order = 8;
    let cutoff = 60;
    let product = truncated_euler_product(&sieve(cutoff), order, prec);
    let via_product = fgm_log(&(&product - &TruncatedSeries::one(&prec, order))).unwrap();
    let table = PrimeTable::new(cutoff, prec).unwrap();
    let closed = log_zeta_cutoff(cutoff, order, &table).unwrap().series;
    let scale = closed.max_abs_coeff();
    assert!((&via_product - &closed).max_abs_coeff() / scale < 1e-60);
}

#[test]
fn truncated_k_sum_converges_to_full_factor() {
    let prec = Precision::default();
    let full = euler_factor_log_series(5, 4, None, prec);
    let k1 = euler_factor_log_series(5, 4, Some(1), prec);
    let k40 = euler_factor_log_series(5, 4, Some(40), prec);
    assert!((&full - &k40).max_abs_coeff() < 1e-6);
    assert!((&full - &k1).max_abs_coeff() > 1e-2);
    let neg_log = EulerFactorElement::new(5, 4, prec).neg_log();
    assert!((&full - &neg_log).max_abs_coeff() < 1e-70);
    let _ = BigReal::zero_with(prec);
}

#[test]
fn first_failure_is_reported_at_lowest_monomial() {
    let mut f = Series::variable(&(), 4);
    f.set_coeff(3, Rational::from_i64(&(), 1));
    let iso = check_strict_iso(&f, &additive_law(), &additive_law(), 4).unwrap();
    assert_eq!(iso.first_failure, Some(vec![1, 2]));
    assert_eq!(first_nonzero(&Series::zero(&(), 3), 3), None);
}
