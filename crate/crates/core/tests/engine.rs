mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rug::{Integer, Rational};
use twolog::laurent::{
    self, check_multiplicity_condition, conclude_bound, distinct_combination_count, CombinationMethod, EngineError, HeightParam,
    LaurentParams, TwoLogInstance, COND_DISTINCT_COMBINATIONS, COND_DISTINCT_PRODUCTS, COND_HEIGHT_1, COND_HEIGHT_2, COND_MAIN,
};
use twolog::numerics::{IntervalReal, Precision, Status};
use twolog::theorem2::{build_parameters, compute_inputs, dec, height_params};

use common::{alpha_345, brute_combinations, gcd};

fn p() -> Precision {
    Precision::DEFAULT
}

fn params(k: u64, l: u64, r1: u64, s1: u64, r2: u64, s2: u64) -> LaurentParams {
    LaurentParams { k, l, r1, r2, s1, s2, rho: dec("18.1"), mu: dec("0.59") }
}

fn inst(b1: u64, b2: u64) -> TwoLogInstance {
    TwoLogInstance::imaginary_unit_shape(alpha_345(), Integer::from(b1), Integer::from(b2)).unwrap()
}

#[test]
fn shortcut_instances_match_enumeration() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut n = 0;
    while n < 200 {
        let (b1, b2) = (rng.gen_range(1..60u64), rng.gen_range(1..60u64));
        let (r2, s2) = (rng.gen_range(1..=25u64), rng.gen_range(1..=25u64));
        if gcd(b1, b2) != 1 || !(r2 - 1 < b1 || s2 - 1 < b2) {
            continue;
        }
        let brute = brute_combinations(b1, b2, r2, s2);
        assert_eq!(brute as u64, r2 * s2, "b1={b1} b2={b2} R2={r2} S2={s2}");
        let cc = distinct_combination_count(&Integer::from(b1), &Integer::from(b2), r2, s2);
        assert_eq!(cc.count, brute as u128);
        n += 1;
    }
}

#[test]
fn adversarial_instances_follow_enumeration() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut n = 0;
    while n < 50 {
        let (b1, b2) = (rng.gen_range(1..12u64), rng.gen_range(1..12u64));
        let (r2, s2) = (rng.gen_range(2..=25u64), rng.gen_range(2..=25u64));
        let shortcut = gcd(b1, b2) == 1 && (r2 - 1 < b1 || s2 - 1 < b2);
        if shortcut {
            continue;
        }
        let brute = brute_combinations(b1, b2, r2, s2) as u64;
        let cc = distinct_combination_count(&Integer::from(b1), &Integer::from(b2), r2, s2);
        assert_ne!(cc.method, CombinationMethod::Shortcut);
        assert_eq!(cc.count, brute as u128, "b1={b1} b2={b2} R2={r2} S2={s2}");
        // (K-1) L equal to the true count must verify, one more must fail
        for (need, want) in [(brute, Status::Verified), (brute + 1, Status::Failed)] {
            let pr = params(need + 1, 1, 1, 1, r2, s2);
            let (_, second) = check_multiplicity_condition(&pr, &inst(b1, b2), p()).unwrap();
            assert_eq!(second.status, want, "b1={b1} b2={b2} R2={r2} S2={s2} need={need}");
        }
        n += 1;
    }
}

#[test]
fn coprime_small_example_counts_twenty() {
    let cc = distinct_combination_count(&Integer::from(7), &Integer::from(3), 5, 4);
    assert_eq!(cc.count, 20);
    assert_eq!(brute_combinations(7, 3, 5, 4), 20);
}

#[test]
fn products_with_imaginary_unit_count_twenty() {
    let pr = params(10, 20, 4, 5, 10, 10);
    let (first, _) = check_multiplicity_condition(&pr, &inst(1, 1), p()).unwrap();
    assert_eq!(first.name, COND_DISTINCT_PRODUCTS);
    assert_eq!(first.status, Status::Verified);
    assert!(first.detail.contains("20"), "{}", first.detail);
}

#[test]
fn imaginary_unit_height_condition_holds_with_equality() {
    let (ha1, ha2) = height_params();
    let pr = params(2, 2, 1, 1, 1, 1);
    let i = inst(1, 1);
    let h1 = laurent::check_height_condition(&ha1, &i.alpha1, &i, &pr.rho, p()).unwrap();
    assert_eq!(h1.status, Status::Verified);
    assert!(h1.margin.contains_zero() && h1.margin.is_point());
    let h2 = laurent::check_height_condition(&ha2, &i.alpha2, &i, &pr.rho, p()).unwrap();
    assert_eq!(h2.status, Status::Verified);
    assert!(h2.margin.lo() > &0);
}

#[test]
fn tiny_parameters_fail_the_main_inequality() {
    let pr = LaurentParams { rho: Rational::from((101, 100)), ..params(2, 2, 1, 1, 1, 1) };
    let (ha1, ha2) = height_params();
    let rep = laurent::verify(&pr, &inst(1, 1), &ha1, &ha2, p()).unwrap();
    let main = rep.get(COND_MAIN).unwrap();
    assert_eq!(main.status, Status::Failed);
    // R = S = 1 makes b = 0
    assert!(main.detail.contains("degenerate"), "{}", main.detail);

    let pr = LaurentParams { rho: Rational::from((101, 100)), ..params(2, 2, 2, 2, 2, 2) };
    let rep = laurent::verify(&pr, &inst(1, 1), &ha1, &ha2, p()).unwrap();
    let main = rep.get(COND_MAIN).unwrap();
    assert_eq!(main.status, Status::Failed);
    assert!(main.margin.hi() < &0);
}

#[test]
fn invalid_parameters_are_rejected() {
    let (ha1, ha2) = height_params();
    for bad in [
        params(1, 2, 1, 1, 1, 1),
        params(2, 0, 1, 1, 1, 1),
        LaurentParams { rho: Rational::from(1), ..params(2, 2, 1, 1, 1, 1) },
        LaurentParams { mu: Rational::from((1, 4)), ..params(2, 2, 1, 1, 1, 1) },
    ] {
        assert!(matches!(laurent::verify(&bad, &inst(1, 1), &ha1, &ha2, p()), Err(EngineError::InvalidParams(_))));
    }
}

/// Parameters from the fixed recipe for `(10^9, 10^9 + 1)`.
fn base() -> (LaurentParams, TwoLogInstance) {
    let b1 = Integer::from(1_000_000_000u64);
    let b2 = Integer::from(1_000_000_001u64);
    let inputs = compute_inputs(&alpha_345(), &b1, &b2, p()).unwrap();
    let st = build_parameters(&inputs, p()).unwrap();
    (st.params(), TwoLogInstance::imaginary_unit_shape(alpha_345(), b1, b2).unwrap())
}

fn threshold(pr: &LaurentParams) -> IntervalReal {
    let kl = IntervalReal::from_integer(&Integer::from(pr.n()), p());
    -(pr.mu(p()) * kl * pr.rho(p()).ln().unwrap())
}

fn failing(rep: &laurent::VerificationReport) -> Vec<&'static str> {
    rep.conditions.iter().filter(|c| !c.status.is_verified()).map(|c| c.name).collect()
}

#[test]
fn base_instance_verifies_and_concludes() {
    let (pr, i) = base();
    let (ha1, ha2) = height_params();
    let rep = laurent::verify(&pr, &i, &ha1, &ha2, p()).unwrap();
    assert!(rep.all_verified(), "{}", rep.summary());
    let c = conclude_bound(&pr, &i, &rep, &threshold(&pr), p()).unwrap();
    assert!(c.bound.hi() < &0);
    assert!(rep.get(COND_MAIN).unwrap().margin.lo() > &0);
}

#[test]
fn gate_height_condition() {
    let (pr, i) = base();
    let (ha1, ha2) = height_params();
    // a2 just below the smallest admissible value
    let good = ha2.value(&pr.rho, &i.d, &i.alpha2, p()).unwrap();
    let slack = laurent::check_height_condition(&ha2, &i.alpha2, &i, &pr.rho, p()).unwrap().margin;
    let short = HeightParam::Value(&good - &slack - IntervalReal::from_rational(&Rational::from((1, 1000)), p()));
    let rep = laurent::verify(&pr, &i, &ha1, &short, p()).unwrap();
    assert_eq!(failing(&rep), vec![COND_HEIGHT_2]);
    assert!(conclude_bound(&pr, &i, &rep, &threshold(&pr), p()).is_err());
}

#[test]
fn gate_cardinality_condition() {
    let (pr, _) = base();
    let (ha1, ha2) = height_params();
    // equal coefficients collapse the combinations, log b barely moves
    let i = inst(1_000_000_000, 1_000_000_000);
    let rep = laurent::verify(&pr, &i, &ha1, &ha2, p()).unwrap();
    assert_eq!(failing(&rep), vec![COND_DISTINCT_COMBINATIONS]);
    assert!(conclude_bound(&pr, &i, &rep, &threshold(&pr), p()).is_err());
}

#[test]
fn gate_main_inequality() {
    let (pr, _) = base();
    let (ha1, ha2) = height_params();
    let b1 = Integer::from(10).pow(40);
    let i = TwoLogInstance::imaginary_unit_shape(alpha_345(), b1.clone(), b1 + 1).unwrap();
    let rep = laurent::verify(&pr, &i, &ha1, &ha2, p()).unwrap();
    assert_eq!(failing(&rep), vec![COND_MAIN]);
    assert!(conclude_bound(&pr, &i, &rep, &threshold(&pr), p()).is_err());
}

#[test]
fn reverify_agrees_at_doubled_precision() {
    let (pr, i) = base();
    let (ha1, ha2) = height_params();
    let rep = laurent::verify(&pr, &i, &ha1, &ha2, p()).unwrap();
    let c = conclude_bound(&pr, &i, &rep, &threshold(&pr), p()).unwrap();
    let (rep2, c2) = laurent::reverify(&pr, &i, &ha1, &ha2, &threshold(&pr), p()).unwrap();
    assert!(rep2.all_verified());
    assert_eq!(rep2.precision.bits(), 256);
    assert!(c.bound.intersect(&c2.bound).is_some());
    assert!(c.bound.width() >= c2.bound.width());
}

#[test]
fn first_height_name_is_alpha1() {
    let (pr, i) = base();
    let (ha1, ha2) = height_params();
    let rep = laurent::verify(&pr, &i, &ha1, &ha2, p()).unwrap();
    let names: Vec<_> = rep.conditions.iter().map(|c| c.name).collect();
    assert_eq!(names, vec![COND_HEIGHT_1, COND_HEIGHT_2, COND_DISTINCT_PRODUCTS, COND_DISTINCT_COMBINATIONS, COND_MAIN]);
}
