//! Factorial-type sums with rigorous remainder bounds.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::{IntervalReal, NumericsError, Precision};

/// Below this, `log n!` is taken from the exact factorial and sums of
/// logarithms are evaluated term by term.
const DIRECT_LIMIT: u64 = 1024;

/// Largest `k` for which `B_{2k}` is tabulated.
const BERNOULLI_MAX_K: usize = 100;

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        let top = 2 * BERNOULLI_MAX_K;
        let mut b: Vec<Rational> = Vec::with_capacity(top + 1);
        b.push(Rational::from(1));
        for m in 1..=top {
            if m > 1 && m % 2 == 1 {
                b.push(Rational::new());
                continue;
            }
            let mut acc = Rational::new();
            for (j, bj) in b.iter().enumerate() {
                if *bj != 0 {
                    let c = Integer::from(Integer::binomial_u(m as u32 + 1, j as u32));
                    acc += Rational::from(bj * &c);
                }
            }
            b.push(-acc / Rational::from(m as u64 + 1));
        }
        (0..=BERNOULLI_MAX_K).map(|k| b[2 * k].clone()).collect()
    })
}

/// The Bernoulli number `B_{2k}` (with `B_2 = 1/6`), for `k <= 100`.
pub fn bernoulli_even(k: usize) -> Option<&'static Rational> {
    bernoulli_table().get(k)
}

fn tiny(p: Precision) -> Rational {
    Rational::from((1, Integer::from(Integer::u_pow_u(2, p.bits() + 8))))
}

/// Enclosure of `log n!`.
///
/// Exact factorial for small `n`. Beyond that, Stirling's series truncated
/// where its terms drop below the working precision; the tail is bracketed
/// between zero and the first omitted term.
pub fn log_factorial(n: u64, p: Precision) -> IntervalReal {
    if n < 2 {
        return IntervalReal::zero(p);
    }
    if n < DIRECT_LIMIT {
        let f = Integer::from(Integer::factorial(n as u32));
        return IntervalReal::from_integer(&f, p).ln().expect("n! is positive");
    }
    let nn = IntervalReal::from_integer(&Integer::from(n), p);
    let ln_n = nn.ln().expect("n is positive");
    let two_pi = IntervalReal::pi(p) * 2;
    let half = IntervalReal::from_rational(&Rational::from((1, 2)), p);
    let mut s = &(&nn + &half) * &ln_n - &nn + &half * two_pi.ln().expect("2pi is positive");

    let target = tiny(p);
    let term = |k: usize| -> Option<Rational> {
        let b = bernoulli_even(k)?;
        let kk = 2 * k as u32;
        let denom = Integer::from(kk) * Integer::from(kk - 1) * Integer::from(n).pow(kk - 1);
        Some(b / Rational::from(denom))
    };
    let mut k = 1;
    loop {
        let t = term(k).expect("Stirling order stays inside the Bernoulli table");
        let next = term(k + 1);
        s = &s + &IntervalReal::from_rational(&t, p);
        match next {
            Some(nt) if Rational::from(nt.abs_ref()) >= target && k + 1 < BERNOULLI_MAX_K => k += 1,
            Some(nt) => {
                let tail = IntervalReal::from_rational(&nt, p);
                return s.hull(&(&s + &tail));
            }
            None => unreachable!("loop stops before the table ends"),
        }
    }
}

/// `eps(N) = (2/N) log(N! / N^(N-1) * (e^N + (e-1)^N))`.
///
/// Evaluated as `2 [log N! - (N-1) log N + N + log1p(exp(N log(1 - 1/e)))] / N`
/// so that nothing of size `e^N` is ever formed.
pub fn epsilon_of_n(n: u64, p: Precision) -> Result<IntervalReal, NumericsError> {
    if n == 0 {
        return Err(NumericsError::Domain { op: "epsilon", detail: "N must be positive".into() });
    }
    let nn = IntervalReal::from_integer(&Integer::from(n), p);
    let ln_n = nn.ln()?;
    let inv_e = (-IntervalReal::one(p)).exp();
    let log_ratio = (-inv_e).ln_1p()?;
    let tail = (&nn * &log_ratio).exp().ln_1p()?;
    let nm1 = IntervalReal::from_integer(&Integer::from(n - 1), p);
    let inner = log_factorial(n, p) - &nm1 * &ln_n + &nn + tail;
    (inner * 2).div(&nn)
}

fn direct_sum_jlogj(upto_exclusive: u64, p: Precision) -> IntervalReal {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), IntervalReal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache lock").get(&(upto_exclusive, p.bits())) {
        return v.clone();
    }
    let mut s = IntervalReal::zero(p);
    for j in 2..upto_exclusive {
        let jj = IntervalReal::from_int(j as i64, p);
        s = s + &jj * &jj.ln().expect("j >= 2");
    }
    cache.lock().expect("cache lock").insert((upto_exclusive, p.bits()), s.clone());
    s
}

/// `sum_{j=1}^{n} j log j` via Euler-Maclaurin from `DIRECT_LIMIT` on.
fn log_hyperfactorial(n: u64, p: Precision) -> IntervalReal {
    if n < DIRECT_LIMIT {
        return direct_sum_jlogj(n + 1, p);
    }
    let a = DIRECT_LIMIT;
    let head = direct_sum_jlogj(a, p);
    let ai = IntervalReal::from_int(a as i64, p);
    let ni = IntervalReal::from_integer(&Integer::from(n), p);
    let ln_a = ai.ln().expect("positive");
    let ln_n = ni.ln().expect("positive");
    let quarter = |x: &IntervalReal| x.sqr().div_int(4).expect("nonzero");
    let half_sq_log = |x: &IntervalReal, l: &IntervalReal| &x.sqr() * l * IntervalReal::from_rational(&Rational::from((1, 2)), p);
    let integral = half_sq_log(&ni, &ln_n) - quarter(&ni) - half_sq_log(&ai, &ln_a) + quarter(&ai);
    let ends = (&ai * &ln_a + &ni * &ln_n).div_int(2).expect("nonzero");
    let first = (&ln_n - &ln_a).div_int(12).expect("nonzero");

    // Correction terms k >= 2 are exact rationals:
    // -B_{2k} / ((2k)(2k-1)(2k-2)) * (n^-(2k-2) - a^-(2k-2)).
    // Remainder after order m is at most |B_{2m}| / ((2m)(2m-1)(2m-2) a^(2m-2)).
    let target = tiny(p);
    let weight = |k: usize| -> Rational {
        let b = bernoulli_even(k).expect("inside table");
        let kk = 2 * k as u64;
        b / Rational::from(Integer::from(kk) * (kk - 1) * (kk - 2))
    };
    let remainder = |m: usize| -> Rational {
        let w = weight(m);
        let pw = Integer::from(Integer::u_pow_u(a as u32, 2 * m as u32 - 2));
        Rational::from(w.abs_ref()) / Rational::from(pw)
    };
    let mut corr = Rational::new();
    let mut m = 2;
    while m < BERNOULLI_MAX_K && remainder(m) >= target {
        let e = 2 * m as u32 - 2;
        let inv_n = Rational::from((1, Integer::from(n).pow(e)));
        let inv_a = Rational::from((1, Integer::from(Integer::u_pow_u(a as u32, e))));
        corr -= weight(m) * (inv_n - inv_a);
        m += 1;
    }
    let r = IntervalReal::from_rational(&remainder(m), p);
    let rem = (-&r).hull(&r);
    head + integral + ends + first + IntervalReal::from_rational(&corr, p) + rem
}

/// `log prod_{k=1}^{n} k! = sum_{k=1}^{n} log k!`.
pub fn log_superfactorial(n: u64, p: Precision) -> IntervalReal {
    if n < 2 {
        return IntervalReal::zero(p);
    }
    if n < DIRECT_LIMIT {
        let mut s = IntervalReal::zero(p);
        for j in 2..=n {
            let lj = IntervalReal::from_int(j as i64, p).ln().expect("j >= 2");
            s = s + &lj * ((n + 1 - j) as i64);
        }
        return s;
    }
    let np1 = IntervalReal::from_integer(&Integer::from(n + 1), p);
    &np1 * &log_factorial(n, p) - log_hyperfactorial(n, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(*bernoulli_even(0).unwrap(), Rational::from(1));
        assert_eq!(*bernoulli_even(1).unwrap(), Rational::from((1, 6)));
        assert_eq!(*bernoulli_even(2).unwrap(), Rational::from((-1, 30)));
        assert_eq!(*bernoulli_even(6).unwrap(), Rational::from((691, -2730)));
        assert!(bernoulli_even(BERNOULLI_MAX_K + 1).is_none());
    }

    #[test]
    fn stirling_agrees_with_exact_just_past_switch() {
        for &prec in &[128u32, 512] {
            let p = Precision::new(prec).unwrap();
            let n = DIRECT_LIMIT + 7;
            let exact = IntervalReal::from_integer(&Integer::from(Integer::factorial(n as u32)), p).ln().unwrap();
            let approx = log_factorial(n, p);
            assert!(approx.intersect(&exact).is_some(), "{approx} vs {exact}");
            assert!(approx.width() < Float::with_val(prec, Float::i_exp(1, 30 - prec as i32)));
        }
    }

    #[test]
    fn hyperfactorial_matches_direct_sum() {
        let p = Precision::DEFAULT;
        let n = 2500;
        let direct = direct_sum_jlogj(n + 1, p);
        let em = log_hyperfactorial(n, p);
        assert!(direct.intersect(&em).is_some(), "{direct} vs {em}");
        assert!(em.width() < 1e-20);
    }

    #[test]
    fn epsilon_small_case() {
        // N = 1: 2 * log(1 * (e + e - 1)).
        let p = Precision::DEFAULT;
        let eps = epsilon_of_n(1, p).unwrap();
        let want = 2.0 * (2.0 * std::f64::consts::E - 1.0).ln();
        assert!((eps.to_f64() - want).abs() < 1e-14);
        assert!(epsilon_of_n(0, p).is_err());
    }
}
