//! Pipeline values frozen from independent 60-digit evaluations of the
//! defining prime sums, plus cross-formula checks.

use fgzeta::primes::{pairwise_sum, sum_k_pow, KPowSums, PrimeSumTable, PrimeTable};
use fgzeta::ring::{BigReal, Precision};
use fgzeta::zeta::{gaussian_deviation, log_zeta_cutoff, run_pipeline, run_pipeline_at};

fn prec() -> Precision {
    Precision::default()
}

fn real(s: &str) -> BigReal {
    BigReal::parse(s, prec()).unwrap()
}

fn rel(a: &BigReal, b: &BigReal) -> f64 {
    ((a - b) / b.clone()).abs().to_f64()
}

struct Frozen {
    cutoff: u64,
    a0: &'static str,
    a2: &'static str,
    a4: &'static str,
    kappa4: &'static str,
}

const FROZEN: [Frozen; 3] = [
    Frozen {
        cutoff: 2,
        a0: "1.22794717729951567994122538570888059306591039544",
        a2: "1.98010078038562763046420633318771973452680960083",
        a4: "4.00007788280027633176608739038235551601453050939",
        kappa4: "1.02022005725994042886708884771909118630908463551",
    },
    Frozen {
        cutoff: 100,
        a0: "6.94862629637774926709551916422525048290001438860",
        a2: "39.2465336283924644310120615607172961465590643142",
        a4: "100.499361014891161216848679274838143975297482436",
        kappa4: "0.0652470215321347080513152558316095887193003149454",
    },
    Frozen {
        cutoff: 1000,
        a0: "14.2719884402686454257695073419765608359791678467",
        a2: "178.552747249688545180313918709791075733568100954",
        a4: "663.780344543167216849188780791192271832607969135",
        kappa4: "0.0208205076685546545653464318945602194936890556605",
    },
];

#[test]
fn frozen_cumulants() {
    for f in &FROZEN {
        let run = run_pipeline_at(f.cutoff, 4, prec()).unwrap();
        let t = &run.table;
        for (got, want) in [(t.a(0), f.a0), (t.a(2), f.a2), (t.a(4), f.a4), (t.kappa(4), f.kappa4)] {
            assert!(rel(got.unwrap(), &real(want)) < 1e-45, "P={}: {} vs {want}", f.cutoff, got.unwrap());
        }
    }
}

#[test]
fn single_prime_linear_coefficients() {
    let table = PrimeTable::new(2, prec()).unwrap();
    let s = log_zeta_cutoff(2, 2, &table).unwrap().series;
    assert!(rel(s.coeff(1), &real("-1.67340532402849250113113384509340994936696083346")) < 1e-45);
    // w2 = 2 a2 is the second derivative
    let w2 = s.coeff(2) * &BigReal::from_i64_with(2, prec());
    assert!(rel(&w2, &real("3.96020156077125526092841266637543946905361920165")) < 1e-45);
}

#[test]
fn closed_form_k_sums_match_direct_summation() {
    let p = prec();
    let sums = KPowSums::new(8, p);
    let x = BigReal::parse("0.3", p).unwrap();
    for m in 0..=8usize {
        let mut direct = BigReal::zero_with(p);
        let mut xk = BigReal::one_with(p);
        for k in 1..=400u64 {
            xk = xk * &x;
            direct = direct + BigReal::from_u64_with(k, p).powi_self(m as i64) * &xk;
        }
        assert!(rel(&sums.eval(m, &x).unwrap(), &direct) < 1e-60, "m={m}");
    }
    assert_eq!(sum_k_pow(1, &BigReal::parse("0.5", p).unwrap()).unwrap(), BigReal::from_i64_with(2, p));
}

#[test]
fn shared_table_reproduces_individual_runs() {
    let p = Precision(128);
    let table = PrimeTable::new(5000, p).unwrap();
    let sums = PrimeSumTable::build(&table, 5000, 6).unwrap();
    for cutoff in [2u64, 97, 1000, 4999] {
        let shared = run_pipeline(&sums, cutoff, 6).unwrap();
        let alone = run_pipeline_at(cutoff, 6, p).unwrap();
        assert_eq!(shared.table, alone.table, "P={cutoff}");
    }
}

#[test]
fn parallel_and_serial_reductions_agree_bitwise() {
    let p = Precision(128);
    let table = PrimeTable::new(100_000, p).unwrap();
    let sums = PrimeSumTable::build(&table, 100_000, 4).unwrap();
    for n in 0..=4 {
        assert_eq!(sums.sum(n, 100_000), sums.sum_serial(n, 100_000));
    }
    let zero = BigReal::zero_with(p);
    assert_eq!(pairwise_sum(&[], &zero), zero);
}

#[test]
fn normalized_series_is_gaussian_to_leading_order() {
    let run = run_pipeline_at(500, 8, prec()).unwrap();
    assert!(run.normalized.coeff(0).is_zero());
    assert!(rel(run.normalized.coeff(2), &BigReal::one_with(prec())) < 1e-70);
    assert!(run.normalized.odd_part().is_zero());
    let dev = gaussian_deviation(&run.normalized, 4);
    assert_eq!(dev, run.normalized.coeff(4).abs());
}

#[test]
fn sigma_squares_to_a2() {
    let run = run_pipeline_at(300, 6, prec()).unwrap();
    let sq = &run.table.sigma * &run.table.sigma;
    assert!(rel(&sq, run.table.a(2).unwrap()) < 1e-70);
}
