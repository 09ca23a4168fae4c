use std::collections::HashSet;

use rug::{Integer, Rational};

use super::{
    ConditionReport, DerivedQuantities, EngineError, HeightParam, LaurentParams, TwoLogInstance, COND_DISTINCT_COMBINATIONS,
    COND_DISTINCT_PRODUCTS, COND_MAIN,
};
use crate::algebraic::{AlgebraicNumber, ComplexEnclosure};
use crate::numerics::{epsilon_of_n, IntervalReal, Precision, Status};

const ENUMERATION_LIMIT: u128 = 1_000_000;
const RATIONAL_PRODUCT_LIMIT: u64 = 10_000;
const NUMERIC_PRODUCT_LIMIT: u64 = 2_000;

/// Checks `a >= ρ |log α| − log |α| + 2D h(α)`.
///
/// Roots of unity have `arg α` an exact rational multiple of `π`, so a
/// structured `a` can meet the bound with exact equality.
pub fn check_height_condition(
    a: &HeightParam,
    alpha: &AlgebraicNumber,
    inst: &TwoLogInstance,
    rho: &Rational,
    p: Precision,
) -> Result<ConditionReport, EngineError> {
    let unit = alpha.has_unit_modulus()?;
    let log_abs = if unit { IntervalReal::zero(p) } else { alpha.log_abs(p)? };
    let exact_arg = if unit { alpha.argument_over_pi(p)? } else { None };
    let arg = alpha.principal_argument(p)?;
    let abs_log = if unit { arg.abs() } else { (log_abs.sqr() + arg.sqr()).sqrt()? };
    let h = alpha.absolute_log_height(p)?;
    let two_d_h = IntervalReal::from_rational(&inst.d, p) * 2 * &h;
    let rho_i = IntervalReal::from_rational(rho, p);

    let margin = match a {
        HeightParam::Structured { pi_coeff, with_height, extra } => {
            let pi_part = match &exact_arg {
                Some(q) => {
                    let c = rho * (pi_coeff - Rational::from(q.abs_ref()));
                    IntervalReal::from_rational(&c, p) * IntervalReal::pi(p)
                }
                None => &rho_i * (IntervalReal::from_rational(pi_coeff, p) * IntervalReal::pi(p) - &abs_log),
            };
            let height_part = if *with_height { IntervalReal::zero(p) } else { -&two_d_h };
            pi_part + height_part + IntervalReal::from_rational(extra, p) + &log_abs
        }
        HeightParam::Value(v) => v.round_to(p) - (&rho_i * &abs_log - &log_abs + &two_d_h),
    };
    let status = margin.ge_status(&IntervalReal::zero(p));
    Ok(ConditionReport { name: "height", status, margin, detail: format!("h(alpha) in {h}, |log alpha| in {abs_log}") })
}

/// How the size of `{r b2 + s b1}` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombinationMethod {
    /// `gcd = 1` and `R2 − 1 < b1` or `S2 − 1 < b2`: all values distinct.
    Shortcut,
    Enumeration,
    /// `R2 S2 − max(0, R2 − b1') max(0, S2 − b2')` with `b' = b / gcd`.
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CombinationCount {
    pub count: u128,
    pub method: CombinationMethod,
}

/// Exact `#{r b2 + s b1 : 0 <= r < R2, 0 <= s < S2}`.
pub fn distinct_combination_count(b1: &Integer, b2: &Integer, r2: u64, s2: u64) -> CombinationCount {
    let total = r2 as u128 * s2 as u128;
    let g = Integer::from(b1.gcd_ref(b2));
    if g == 1 && (*b1 > r2 - 1 || *b2 > s2 - 1) {
        return CombinationCount { count: total, method: CombinationMethod::Shortcut };
    }
    if total <= ENUMERATION_LIMIT {
        let mut seen = HashSet::with_capacity(total as usize);
        for r in 0..r2 {
            for s in 0..s2 {
                seen.insert(Integer::from(b2 * r) + Integer::from(b1 * s));
            }
        }
        return CombinationCount { count: seen.len() as u128, method: CombinationMethod::Enumeration };
    }
    let b1r = Integer::from(b1.div_exact_ref(&g));
    let b2r = Integer::from(b2.div_exact_ref(&g));
    let excess = |n: u64, b: &Integer| -> u128 {
        if *b < n {
            (Integer::from(n) - b).to_u128().expect("bounded by n")
        } else {
            0
        }
    };
    let dup = excess(r2, &b1r) * excess(s2, &b2r);
    CombinationCount { count: total - dup, method: CombinationMethod::ClosedForm }
}

enum ProductCount {
    Exact(u64, String),
    AtLeast(u64, String),
}

fn distinct_products(params: &LaurentParams, inst: &TwoLogInstance, p: Precision) -> Result<ProductCount, EngineError> {
    let (r1, s1) = (params.r1, params.s1);
    let o1 = inst.alpha1.root_of_unity_order().map(|m| m as u64);
    let o2 = inst.alpha2.root_of_unity_order().map(|m| m as u64);
    match (o1, o2) {
        (Some(m), None) => {
            Ok(ProductCount::Exact(r1.min(m) * s1, format!("alpha1 has order {m}, alpha2 is not a root of unity")))
        }
        (None, Some(m)) => {
            Ok(ProductCount::Exact(r1 * s1.min(m), format!("alpha2 has order {m}, alpha1 is not a root of unity")))
        }
        (Some(m1), Some(m2)) => {
            let q1 = inst.alpha1.argument_over_pi(p)?.expect("root of unity");
            let q2 = inst.alpha2.argument_over_pi(p)?.expect("root of unity");
            let big_m = Integer::from(m1).lcm(&Integer::from(m2));
            let to_exp = |q: &Rational| -> Integer {
                let e = Rational::from(q * &big_m) / 2u32;
                let mut v = e.numer().clone() % &big_m;
                if v < 0 {
                    v += &big_m;
                }
                v
            };
            let (e1, e2) = (to_exp(&q1), to_exp(&q2));
            let mut seen = HashSet::new();
            for r in 0..r1.min(m1) {
                for s in 0..s1.min(m2) {
                    seen.insert((&e1 * r + Integer::from(&e2 * s)) % &big_m);
                }
            }
            Ok(ProductCount::Exact(seen.len() as u64, "both roots of unity; exponents enumerated".into()))
        }
        (None, None) if inst.alpha1.degree() == 1 && inst.alpha2.degree() == 1 && r1 * s1 <= RATIONAL_PRODUCT_LIMIT => {
            let x1 = &inst.alpha1.root_hint().0;
            let x2 = &inst.alpha2.root_hint().0;
            let mut seen = HashSet::new();
            let mut pr = Rational::from(1);
            for _ in 0..r1 {
                let mut v = pr.clone();
                for _ in 0..s1 {
                    seen.insert(v.clone());
                    v *= x2;
                }
                pr *= x1;
            }
            Ok(ProductCount::Exact(seen.len() as u64, "rational values enumerated exactly".into()))
        }
        (None, None) if r1 * s1 <= NUMERIC_PRODUCT_LIMIT => {
            let z1 = inst.alpha1.enclosure(p)?;
            let z2 = inst.alpha2.enclosure(p)?;
            let mut boxes: Vec<ComplexEnclosure> = Vec::with_capacity((r1 * s1) as usize);
            let mut pr = ComplexEnclosure::one(p);
            for _ in 0..r1 {
                let mut v = pr.clone();
                for _ in 0..s1 {
                    boxes.push(v.clone());
                    v = &v * &z2;
                }
                pr = &pr * &z1;
            }
            let mut chosen: Vec<&ComplexEnclosure> = Vec::new();
            for b in &boxes {
                let apart = chosen.iter().all(|c| {
                    b.re.certainly_lt(&c.re) || b.re.certainly_gt(&c.re) || b.im.certainly_lt(&c.im) || b.im.certainly_gt(&c.im)
                });
                if apart {
                    chosen.push(b);
                }
            }
            Ok(ProductCount::AtLeast(chosen.len() as u64, "numerically separated values".into()))
        }
        _ => Ok(ProductCount::AtLeast(0, "too many products to compare".into())),
    }
}

/// Both cardinality hypotheses.
pub fn check_multiplicity_condition(
    params: &LaurentParams,
    inst: &TwoLogInstance,
    p: Precision,
) -> Result<(ConditionReport, ConditionReport), EngineError> {
    let l = params.l;
    let first = if params.r1 * params.s1 < l {
        ConditionReport {
            name: COND_DISTINCT_PRODUCTS,
            status: Status::Failed,
            margin: IntervalReal::from_int(params.r1 as i64 * params.s1 as i64 - l as i64, p),
            detail: "R1*S1 < L".into(),
        }
    } else {
        match distinct_products(params, inst, p)? {
            ProductCount::Exact(c, how) => ConditionReport {
                name: COND_DISTINCT_PRODUCTS,
                status: if c >= l { Status::Verified } else { Status::Failed },
                margin: IntervalReal::from_int(c as i64 - l as i64, p),
                detail: format!("count {c} ({how})"),
            },
            ProductCount::AtLeast(c, how) => ConditionReport {
                name: COND_DISTINCT_PRODUCTS,
                status: if c >= l { Status::Verified } else { Status::Indeterminate },
                margin: IntervalReal::from_int(c as i64 - l as i64, p),
                detail: format!("count at least {c} ({how})"),
            },
        }
    };

    let need = (params.k as u128 - 1) * l as u128;
    let cc = distinct_combination_count(&inst.b1, &inst.b2, params.r2, params.s2);
    let diff = Integer::from(cc.count) - Integer::from(need);
    let second = ConditionReport {
        name: COND_DISTINCT_COMBINATIONS,
        status: if cc.count >= need { Status::Verified } else { Status::Failed },
        margin: IntervalReal::from_integer(&diff, p),
        detail: format!("count {} via {:?}, need {}", cc.count, cc.method, need),
    };
    Ok((first, second))
}

/// `K(σL − 1) log ρ − (D+1) log N − D(K−1) log b − gL(R a1 + S a2)`.
pub fn main_inequality_lhs(
    params: &LaurentParams,
    dq: &DerivedQuantities,
    a1: &IntervalReal,
    a2: &IntervalReal,
    inst: &TwoLogInstance,
    rho: &IntervalReal,
    p: Precision,
) -> Result<Option<IntervalReal>, EngineError> {
    let Some(log_b) = &dq.log_b else { return Ok(None) };
    let k = IntervalReal::from_int(params.k as i64, p);
    let l = IntervalReal::from_int(params.l as i64, p);
    let d = inst.d_interval(p);
    let n = IntervalReal::from_integer(&Integer::from(dq.n), p);
    let t1 = &k * (&dq.sigma * &l - 1) * rho.ln()?;
    let t2 = (&d + 1) * n.ln()?;
    let t3 = &d * (&k - 1) * log_b;
    let t4 = &dq.g * &l * (IntervalReal::from_int(dq.r as i64, p) * a1 + IntervalReal::from_int(dq.s as i64, p) * a2);
    Ok(Some(t1 - t2 - t3 - t4))
}

/// Main hypothesis, with margin `LHS − ε(N)`.
pub fn check_main_inequality(
    params: &LaurentParams,
    dq: &DerivedQuantities,
    a1: &IntervalReal,
    a2: &IntervalReal,
    inst: &TwoLogInstance,
    rho: &IntervalReal,
    p: Precision,
) -> Result<ConditionReport, EngineError> {
    let Some(lhs) = main_inequality_lhs(params, dq, a1, a2, inst, rho, p)? else {
        return Ok(ConditionReport {
            name: COND_MAIN,
            status: Status::Failed,
            margin: IntervalReal::zero(p),
            detail: "b = 0 (R = S = 1); the inequality is degenerate".into(),
        });
    };
    let eps = epsilon_of_n(dq.n, p)?;
    let margin = lhs - &eps;
    Ok(ConditionReport { name: COND_MAIN, status: margin.positive_status(), margin, detail: format!("epsilon(N) in {eps}") })
}
