mod common;

use proptest::prelude::*;
use rug::{Float, Integer, Rational};
use twolog::numerics::{epsilon_of_n, log_factorial, log_superfactorial, IntervalReal, Precision};

use common::{epsilon_oracle, ORACLE_BITS};

const PI_100: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

fn p128() -> Precision {
    Precision::DEFAULT
}

#[test]
fn pi_at_256_bits_is_tight_and_correct() {
    let p = Precision::new(256).unwrap();
    let pi = IntervalReal::pi(p);
    let published = Float::with_val(400, Float::parse(PI_100).unwrap());
    // the published value is itself truncated at 1e-100
    let slack = Float::with_val(400, Float::parse("1e-99").unwrap());
    assert!(pi.lo() <= &(published.clone() + &slack) && pi.hi() >= &(published - &slack));
    assert!(pi.width() < Float::with_val(64, Float::parse("1e-70").unwrap()));
}

#[test]
fn epsilon_matches_brute_force_sum() {
    for n in [2u64, 10, 100, 1000, 5000] {
        let e = epsilon_of_n(n, p128()).unwrap();
        let o = epsilon_oracle(n);
        let tol = Float::with_val(ORACLE_BITS, Float::parse("1e-30").unwrap());
        assert!(e.lo().clone() - &tol <= o && o <= e.hi().clone() + &tol, "N={n}: {e} does not contain oracle {}", o.to_f64());
        assert!(e.width() < 1e-9, "N={n}: width {}", e.width());
    }
}

#[test]
fn epsilon_at_two_by_direct_formula() {
    // 2 log(2 * 2^-1 (e^2 + (e-1)^2)) / 2
    let e = Float::with_val(ORACLE_BITS, 1).exp();
    let direct = (e.clone().square() + Float::with_val(ORACLE_BITS, &e - 1u32).square()).ln();
    let enc = epsilon_of_n(2, p128()).unwrap();
    let tol = Float::with_val(ORACLE_BITS, Float::parse("1e-35").unwrap());
    assert!(enc.lo().clone() - &tol <= direct && direct <= enc.hi().clone() + &tol);
}

#[test]
fn epsilon_at_ten_thousand_below_threshold() {
    let e = epsilon_of_n(10_000, p128()).unwrap();
    assert!(e.hi() < &Float::with_val(64, Float::parse("0.004").unwrap()));
}

#[test]
fn epsilon_decreasing_on_grid() {
    let grid = [100u64, 500, 1000, 5000, 10_000];
    let vals: Vec<_> = grid.iter().map(|&n| epsilon_of_n(n, p128()).unwrap()).collect();
    for w in vals.windows(2) {
        assert!(w[1].certainly_lt(&w[0]));
    }
}

#[test]
fn epsilon_rejects_zero() {
    assert!(epsilon_of_n(0, p128()).is_err());
}

#[test]
fn log_factorial_matches_exact_factorial() {
    for n in [0u64, 1, 5, 20, 170, 1000, 20_000] {
        let exact = Integer::from(Integer::factorial(n as u32));
        let o = Float::with_val(ORACLE_BITS * 4, &exact).ln();
        let enc = log_factorial(n, p128());
        let tol = Float::with_val(ORACLE_BITS, Float::parse("1e-25").unwrap()) * (Float::with_val(64, n) + 1u32);
        assert!(enc.lo().clone() - &tol <= o && o <= enc.hi().clone() + &tol, "n={n}");
    }
}

#[test]
fn log_superfactorial_small_values() {
    // 1! 2! 3! 4! 5! = 34560
    let enc = log_superfactorial(5, p128());
    let o = Float::with_val(ORACLE_BITS, 34560).ln();
    assert!((enc.mid() - o).abs() < 1e-30);
}

#[test]
fn precision_bounds_are_enforced() {
    assert!(Precision::new(8).is_err());
    assert_eq!(Precision::DEFAULT.doubled().bits(), 256);
    let steps: Vec<u32> = Precision::DEFAULT.escalation().map(|p| p.bits()).collect();
    assert_eq!(steps.first(), Some(&128));
    assert_eq!(steps.last(), Some(&1024));
}

#[test]
fn division_by_interval_containing_zero_fails() {
    let p = p128();
    let z = IntervalReal::from_bounds(Float::with_val(128, -1), Float::with_val(128, 1)).unwrap();
    assert!(IntervalReal::one(p).div(&z).is_err());
    assert!(IntervalReal::from_int(-1, p).ln().is_err());
    assert!(IntervalReal::from_int(-1, p).sqrt().is_err());
}

#[test]
fn inverted_bounds_are_rejected() {
    assert!(IntervalReal::from_bounds(Float::with_val(128, 2), Float::with_val(128, 1)).is_err());
}

#[test]
fn decimal_enclosure_of_one_third() {
    let x = IntervalReal::from_rational(&Rational::from((1, 3)), p128());
    let (lo, hi) = x.endpoints_decimal(6);
    assert!(lo.parse::<f64>().unwrap() <= 1.0 / 3.0 && hi.parse::<f64>().unwrap() >= 1.0 / 3.0);
}

fn pos_interval() -> impl Strategy<Value = f64> {
    (-40.0f64..40.0).prop_map(|e| e.exp2())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exp_of_ln_contains_point(x in pos_interval()) {
        let iv = IntervalReal::point(Float::with_val(128, x));
        let back = iv.ln().unwrap().exp();
        prop_assert!(back.contains(&Float::with_val(128, x)));
    }

    #[test]
    fn arithmetic_encloses_high_precision_result(a in -1e6f64..1e6, b in -1e6f64..1e6, c in 0.5f64..1e3) {
        let (ia, ib, ic) = (IntervalReal::point(Float::with_val(128, a)), IntervalReal::point(Float::with_val(128, b)), IntervalReal::point(Float::with_val(128, c)));
        let r = (&ia * &ib + &ic).div(&ic).unwrap().sqr();
        let hp = |v: f64| Float::with_val(ORACLE_BITS * 4, v);
        let o = ((hp(a) * hp(b) + hp(c)) / hp(c)).square();
        prop_assert!(r.lo().clone() <= o && o <= r.hi().clone());
    }

    #[test]
    fn sqrt_and_sqr_are_consistent(x in 1e-10f64..1e10) {
        let iv = IntervalReal::point(Float::with_val(128, x));
        prop_assert!(iv.sqrt().unwrap().sqr().contains(&Float::with_val(128, x)));
    }
}
