use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use super::complex::ComplexEnclosure;
use super::AlgebraicError;
use crate::numerics::{IntervalReal, Precision};

/// Primitive integer polynomial, constant term first, positive leading
/// coefficient, degree at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<Integer>,
}

impl IntegerPolynomial {
    /// Normalises `coeffs`: trailing zeros dropped, content divided out,
    /// sign flipped so the leading coefficient is positive.
    pub fn new(mut coeffs: Vec<Integer>) -> Result<Self, AlgebraicError> {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(AlgebraicError::Degree("polynomial must have degree at least 1".into()));
        }
        let content = coeffs.iter().fold(Integer::new(), |g, c| g.gcd(c));
        let sign_flip = *coeffs.last().unwrap() < 0;
        for c in coeffs.iter_mut() {
            c.div_exact_mut(&content);
            if sign_flip {
                *c = -std::mem::take(c);
            }
        }
        Ok(IntegerPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, AlgebraicError> {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &Integer {
        self.coeffs.last().unwrap()
    }

    pub fn constant(&self) -> &Integer {
        &self.coeffs[0]
    }

    /// `x^d f(1/x)`, as a raw coefficient list (not renormalised).
    pub fn reversed_coeffs(&self) -> Vec<Integer> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// `f` equals plus or minus its reversal.
    pub fn is_self_inversive(&self) -> bool {
        let rev = self.reversed_coeffs();
        rev == self.coeffs || rev.iter().zip(&self.coeffs).all(|(r, c)| *r == Integer::from(-c))
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::new(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: &ComplexEnclosure, p: Precision) -> ComplexEnclosure {
        let mut acc = ComplexEnclosure::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &acc * z;
            acc.re = &acc.re + &IntervalReal::from_integer(c, p);
        }
        acc
    }

    pub fn derivative_coeffs(&self) -> Vec<Integer> {
        self.coeffs.iter().enumerate().skip(1).map(|(i, c)| Integer::from(c * i as u64)).collect()
    }

    /// Exact division test: does `g` divide `self` over `Z[x]`?
    pub fn divisible_by(&self, g: &[Integer]) -> bool {
        let mut rem: Vec<Integer> = self.coeffs.clone();
        let dg = g.len() - 1;
        let lg = &g[dg];
        if *lg == 0 {
            return false;
        }
        while rem.len() > dg {
            let top = rem.last().unwrap().clone();
            if top != 0 {
                if !top.is_divisible(lg) {
                    return false;
                }
                let q = Integer::from(top.div_exact_ref(lg));
                let shift = rem.len() - 1 - dg;
                for (i, gi) in g.iter().enumerate() {
                    rem[shift + i] -= Integer::from(&q * gi);
                }
            }
            rem.pop();
        }
        rem.iter().all(|c| *c == 0)
    }

    /// Exact cyclotomic test for a polynomial assumed irreducible: monic,
    /// constant term `±1`, and `x^m ≡ 1 (mod f)` for some `m` with
    /// `phi(m) = deg f`. Every such `m` satisfies `m <= 2 d^2`.
    pub fn is_cyclotomic(&self) -> bool {
        self.cyclotomic_order().is_some()
    }

    /// The `m` with `f = Phi_m`, if `f` is cyclotomic.
    pub fn cyclotomic_order(&self) -> Option<usize> {
        if *self.leading() != 1 || (*self.constant() != 1 && *self.constant() != -1) {
            return None;
        }
        let d = self.degree();
        let bound = 2 * d * d + 2;
        let phi = totients(bound);
        // r holds x^k mod f, degree < d.
        let mut r = vec![Integer::new(); d];
        r[0] = Integer::from(1);
        for (k, &phik) in phi.iter().enumerate().skip(1) {
            let top = std::mem::take(&mut r[d - 1]);
            r.rotate_right(1);
            if top != 0 {
                for (ri, c) in r.iter_mut().zip(&self.coeffs) {
                    *ri -= Integer::from(&top * c);
                }
            }
            if phik == d && r[0] == 1 && r[1..].iter().all(|c| *c == 0) {
                return Some(k);
            }
        }
        None
    }
}

fn totients(n: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=n).collect();
    for i in 2..=n {
        if phi[i] == i {
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i;
                j += i;
            }
        }
    }
    phi
}

impl FromStr for IntegerPolynomial {
    type Err = AlgebraicError;

    /// Comma-separated integer coefficients, constant term first.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<Integer>().map_err(|_| AlgebraicError::Parse(format!("bad coefficient `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coeffs)
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> IntegerPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn normalisation() {
        let f = poly("-10,12,-10,0");
        assert_eq!(f.to_string(), "5,-6,5");
        assert!("0,0".parse::<IntegerPolynomial>().is_err());
        assert!("3".parse::<IntegerPolynomial>().is_err());
        assert!("1,x".parse::<IntegerPolynomial>().is_err());
    }

    #[test]
    fn self_inversive() {
        assert!(poly("5,-6,5").is_self_inversive());
        assert!(poly("-1,1").is_self_inversive());
        assert!(!poly("-2,1").is_self_inversive());
        assert!(!poly("0,1").is_self_inversive());
    }

    #[test]
    fn cyclotomic_detection() {
        assert!(poly("1,0,1").is_cyclotomic());
        assert!(poly("1,1,1,1,1,1,1").is_cyclotomic());
        assert!(poly("-1,1").is_cyclotomic());
        assert!(poly("1,-1,1").is_cyclotomic());
        assert!(poly("1,0,-1,0,1").is_cyclotomic()); // Phi_12
        assert!(!poly("5,-6,5").is_cyclotomic());
        assert!(!poly("1,-1,0,1").is_cyclotomic());
        assert!(!poly("1,-3,1").is_cyclotomic());
        assert_eq!(poly("1,0,1").cyclotomic_order(), Some(4));
        assert_eq!(poly("1,1").cyclotomic_order(), Some(2));
    }

    #[test]
    fn exact_division() {
        let f = poly("-1,0,0,1"); // x^3 - 1
        assert!(f.divisible_by(&[Integer::from(1), Integer::from(1), Integer::from(1)]));
        assert!(!f.divisible_by(&[Integer::from(1), Integer::from(1)]));
    }
}
