//! Independent oracles. None of these call into the library's numerics;
//! they work with plain MPFR floats at a generous fixed precision.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::Rng;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use twolog::algebraic::AlgebraicNumber;

pub const ORACLE_BITS: u32 = 512;

pub fn f(x: impl Into<f64>) -> Float {
    Float::with_val(ORACLE_BITS, x.into())
}

pub fn pi() -> Float {
    Float::with_val(ORACLE_BITS, Constant::Pi)
}

/// `(3+4i)/5`.
pub fn alpha_345() -> AlgebraicNumber {
    AlgebraicNumber::parse("5,-6,5", Some("0.6,0.8"), false).unwrap()
}

/// `2 log(N! N^{-N+1} (e^N + (e-1)^N)) / N` with `log N!` summed term by term.
pub fn epsilon_oracle(n: u64) -> Float {
    let mut log_fact = Float::with_val(ORACLE_BITS * 2, 0);
    for k in 2..=n {
        log_fact += Float::with_val(ORACLE_BITS * 2, k).ln();
    }
    let nf = Float::with_val(ORACLE_BITS * 2, n);
    let e = Float::with_val(ORACLE_BITS * 2, 1).exp();
    let em1 = Float::with_val(ORACLE_BITS * 2, &e - 1u32);
    let sum = Float::with_val(ORACLE_BITS * 2, (&e).pow(n)) + Float::with_val(ORACLE_BITS * 2, (&em1).pow(n));
    let inner = log_fact - Float::with_val(ORACLE_BITS * 2, n - 1) * nf.clone().ln() + sum.ln();
    Float::with_val(ORACLE_BITS, inner * 2u32 / nf)
}

#[derive(Clone, Debug)]
pub struct C {
    pub re: Float,
    pub im: Float,
}

impl C {
    fn new(re: Float, im: Float) -> Self {
        C { re, im }
    }
    fn add(&self, o: &C) -> C {
        C::new(Float::with_val(ORACLE_BITS, &self.re + &o.re), Float::with_val(ORACLE_BITS, &self.im + &o.im))
    }
    fn sub(&self, o: &C) -> C {
        C::new(Float::with_val(ORACLE_BITS, &self.re - &o.re), Float::with_val(ORACLE_BITS, &self.im - &o.im))
    }
    fn mul(&self, o: &C) -> C {
        let re = Float::with_val(ORACLE_BITS, &self.re * &o.re) - Float::with_val(ORACLE_BITS, &self.im * &o.im);
        let im = Float::with_val(ORACLE_BITS, &self.re * &o.im) + Float::with_val(ORACLE_BITS, &self.im * &o.re);
        C::new(re, im)
    }
    fn div(&self, o: &C) -> C {
        let d = o.norm2();
        let conj = C::new(o.re.clone(), -o.im.clone());
        let n = self.mul(&conj);
        C::new(Float::with_val(ORACLE_BITS, &n.re / &d), Float::with_val(ORACLE_BITS, &n.im / &d))
    }
    pub fn norm2(&self) -> Float {
        Float::with_val(ORACLE_BITS, self.re.clone().square() + self.im.clone().square())
    }
    pub fn abs(&self) -> Float {
        self.norm2().sqrt()
    }
}

/// All complex roots of `coeffs` (constant term first) by Durand-Kerner.
pub fn durand_kerner(coeffs: &[i64]) -> Vec<C> {
    let n = coeffs.len() - 1;
    let lead = f(coeffs[n] as f64);
    let monic: Vec<Float> = coeffs.iter().map(|&c| Float::with_val(ORACLE_BITS, f(c as f64) / &lead)).collect();
    let eval = |z: &C| -> C {
        let mut acc = C::new(f(0), f(0));
        for c in monic.iter().rev() {
            acc = acc.mul(z).add(&C::new(c.clone(), f(0)));
        }
        acc
    };
    // Cauchy bound for the starting circle
    let bound = 1.0 + monic[..n].iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
    let seed = C::new(f(0.4), f(0.9));
    let mut z: Vec<C> = Vec::with_capacity(n);
    let mut w = C::new(f(bound.min(4.0)), f(0));
    for _ in 0..n {
        z.push(w.clone());
        w = w.mul(&seed);
    }
    let tol = Float::with_val(ORACLE_BITS, Float::i_exp(1, -(ORACLE_BITS as i32 - 40)));
    for _ in 0..2000 {
        let mut worst = f(0);
        for i in 0..n {
            let mut den = C::new(f(1), f(0));
            for j in 0..n {
                if i != j {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            let step = eval(&z[i]).div(&den);
            let s = step.abs();
            if s > worst {
                worst = s;
            }
            z[i] = z[i].sub(&step);
        }
        if worst < tol {
            break;
        }
    }
    z
}

/// `(log|a| + Σ log max(1, |z|)) / d` from numerically computed roots.
pub fn height_oracle(coeffs: &[i64]) -> Float {
    let n = coeffs.len() - 1;
    let mut s = f(coeffs[n].unsigned_abs() as f64).ln();
    for z in durand_kerner(coeffs) {
        let a = z.abs();
        if a > 1 {
            s += a.ln();
        }
    }
    s / n as u32
}

pub fn float_to_rational(x: &Float) -> Rational {
    x.to_rational().unwrap()
}

/// `"re,im"` with enough digits to pin down one root.
pub fn hint_string(z: &C) -> String {
    format!("{},{}", z.re.to_string_radix(10, Some(40)), z.im.to_string_radix(10, Some(40)))
}

/// `-2.7704 (9.05π + log 5) 17^2`.
pub fn fallback_bound_oracle() -> Float {
    let a = Float::with_val(ORACLE_BITS, Rational::from((905, 100))) * pi() + f(5).ln();
    let c = Float::with_val(ORACLE_BITS, Rational::from((27704, 10000)));
    -(c * a * 289u32)
}

/// `round(2 n atan2(4,3) / π)` at oracle precision.
pub fn arg_power_b1_oracle(n: u64) -> Integer {
    let x = Float::with_val(ORACLE_BITS, f(4).atan2(&f(3))) * 2u32 * n / pi();
    x.round().to_integer().unwrap()
}

/// `#{r b2 + s b1 : 0 <= r < R2, 0 <= s < S2}` by listing every value.
pub fn brute_combinations(b1: u64, b2: u64, r2: u64, s2: u64) -> usize {
    let mut seen = HashSet::new();
    for r in 0..r2 {
        for s in 0..s2 {
            seen.insert(r as u128 * b2 as u128 + s as u128 * b1 as u128);
        }
    }
    seen.len()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Eisenstein at `q`: every coefficient but the leading one divisible by `q`,
/// the constant not by `q^2`, the leading not by `q`. Irreducible over Q.
pub fn random_eisenstein(rng: &mut StdRng) -> Vec<i64> {
    loop {
        let deg = rng.gen_range(1..=6usize);
        let q = [2i64, 3, 5][rng.gen_range(0..3)];
        let mut c: Vec<i64> = (0..deg).map(|_| q * rng.gen_range(-4..=4)).collect();
        let mut c0 = rng.gen_range(1..=4);
        while c0 % q == 0 {
            c0 += 1;
        }
        c[0] = q * c0 * if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut lead = rng.gen_range(1..=7);
        if lead % q == 0 {
            lead += 1;
        }
        c.push(lead);
        let content = c.iter().fold(0u64, |g, &x| gcd(g, x.unsigned_abs()));
        if content == 1 {
            return c;
        }
    }
}
