//! Algebraic numbers given by a minimal polynomial and a root selector.

mod complex;
mod polynomial;
mod roots;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rug::float::Round;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use complex::ComplexEnclosure;
pub use polynomial::IntegerPolynomial;
pub use roots::{isolate_roots, RootSet};

use crate::numerics::{decimal_to_rational, IntervalReal, NumericsError, Precision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraicError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Degree(String),
    #[error("root hint is ambiguous; candidate roots: {}", .candidates.join("; "))]
    AmbiguousHint { candidates: Vec<String> },
    #[error("a root hint is required for a polynomial of degree {0}")]
    HintRequired(usize),
    #[error("polynomial is reducible: it has the factor {factor}")]
    Reducible { factor: String },
    #[error("irreducibility check not attempted ({0}); mark the polynomial as trusted to proceed")]
    TooLargeToFactor(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// How irreducibility of the minimal polynomial was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    Verified,
    /// Accepted on the caller's word; recorded in every certificate.
    Trusted,
}

const FACTOR_MAX_DEGREE: usize = 16;

fn factor_max_leading() -> Integer {
    Integer::from(10u64.pow(12))
}

fn positive_divisors(a: &Integer) -> Vec<Integer> {
    let a = Integer::from(a.abs_ref());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Integer::from(1);
    while Integer::from(&d * &d) <= a {
        if a.is_divisible(&d) {
            let q = Integer::from(a.div_exact_ref(&d));
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Looks for a factor of degree at most `deg/2` among products of root
/// subsets. `Ok(Some(g))` returns a factor, `Ok(None)` proves irreducibility,
/// `Err(())` means the enclosures were too wide to decide.
fn search_factor(f: &IntegerPolynomial, rs: &RootSet) -> Result<Option<Vec<Integer>>, ()> {
    let n = f.degree();
    let p = rs.precision();
    let divisors = positive_divisors(f.leading());
    let mut undecided = false;
    for k in 1..=n / 2 {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            // monic product of (x - z_i), constant term first
            let mut prod = vec![ComplexEnclosure::one(p)];
            for &i in &idx {
                let z = rs.enclosure(i);
                let mut next = vec![ComplexEnclosure::zero(p); prod.len() + 1];
                for (t, c) in prod.iter().enumerate() {
                    next[t + 1] = &next[t + 1] + c;
                    next[t] = &next[t] - &(c * z);
                }
                prod = next;
            }
            if prod.iter().all(|c| c.im.contains_zero()) {
                'divisor: for c in &divisors {
                    let cc = IntervalReal::from_integer(c, p);
                    let mut g = Vec::with_capacity(prod.len());
                    for coef in &prod {
                        let v = &coef.re * &cc;
                        if v.width() >= 1 {
                            undecided = true;
                            continue 'divisor;
                        }
                        let cand = match v.lo().clone().ceil().to_integer() {
                            Some(x) if v.contains_rational(&Rational::from(&x)) => x,
                            _ => continue 'divisor,
                        };
                        g.push(cand);
                    }
                    if f.divisible_by(&g) {
                        return Ok(Some(g));
                    }
                }
            }
            // next combination
            let mut pos = k;
            while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for t in pos..k {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    if undecided {
        Err(())
    } else {
        Ok(None)
    }
}

/// Exact irreducibility check over `Q` for small polynomials.
pub fn check_irreducible(f: &IntegerPolynomial, p: Precision) -> Result<(), AlgebraicError> {
    if f.degree() == 1 {
        return Ok(());
    }
    if f.degree() > FACTOR_MAX_DEGREE {
        return Err(AlgebraicError::TooLargeToFactor(format!("degree {} exceeds {}", f.degree(), FACTOR_MAX_DEGREE)));
    }
    if *f.leading() > factor_max_leading() {
        return Err(AlgebraicError::TooLargeToFactor("leading coefficient exceeds 10^12".into()));
    }
    for q in p.escalation() {
        let Some(rs) = isolate_roots(f, q) else { continue };
        match search_factor(f, &rs) {
            Ok(None) => return Ok(()),
            Ok(Some(g)) => {
                let g = IntegerPolynomial::new(g).expect("factor has degree >= 1");
                return Err(AlgebraicError::Reducible { factor: g.to_string() });
            }
            Err(()) => continue,
        }
    }
    Err(AlgebraicError::Indeterminate("irreducibility undecided at maximum precision".into()))
}

/// An algebraic number: a root of `minpoly` singled out by the unique root
/// inside the disk `|z - hint| < isolation_radius`.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: IntegerPolynomial,
    hint: (Rational, Rational),
    radius: Rational,
    irreducibility: Irreducibility,
    cache: Arc<Mutex<HashMap<u32, Arc<RootSet>>>>,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraicNumber")
            .field("minpoly", &self.minpoly.to_string())
            .field("hint", &(self.hint.0.to_string(), self.hint.1.to_string()))
            .field("radius", &self.radius.to_string())
            .field("irreducibility", &self.irreducibility)
            .finish()
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
            && self.hint == other.hint
            && self.radius == other.radius
            && self.irreducibility == other.irreducibility
    }
}

fn float_to_rational(x: &Float) -> Rational {
    x.to_rational().expect("finite float")
}

impl AlgebraicNumber {
    /// Builds the number and certifies that the selector isolates one root.
    ///
    /// The root nearest to `hint` is chosen. If the second-nearest root is
    /// less than twice as far away, the hint is rejected as ambiguous.
    /// Irreducibility is checked unless `trusted` is set.
    pub fn new(minpoly: IntegerPolynomial, hint: Option<(Rational, Rational)>, trusted: bool) -> Result<Self, AlgebraicError> {
        let irreducibility = if trusted {
            Irreducibility::Trusted
        } else {
            check_irreducible(&minpoly, Precision::DEFAULT)?;
            Irreducibility::Verified
        };
        let cache = Arc::new(Mutex::new(HashMap::new()));
        if minpoly.degree() == 1 {
            let root = Rational::from((-minpoly.constant().clone(), minpoly.leading().clone()));
            let radius = Rational::from(1);
            return Ok(AlgebraicNumber { minpoly, hint: (root, Rational::new()), radius, irreducibility, cache });
        }
        let hint = hint.ok_or(AlgebraicError::HintRequired(minpoly.degree()))?;
        let mut me = AlgebraicNumber { minpoly, hint, radius: Rational::new(), irreducibility, cache };
        for q in Precision::DEFAULT.escalation() {
            let rs = me.roots(q)?;
            if let Some(radius) = me.choose_radius(&rs)? {
                me.radius = radius;
                return Ok(me);
            }
        }
        Err(AlgebraicError::Indeterminate("could not certify an isolating disk around the hint".into()))
    }

    /// Parses a coefficient list and an optional `"re,im"` hint.
    pub fn parse(minpoly: &str, hint: Option<&str>, trusted: bool) -> Result<Self, AlgebraicError> {
        let f: IntegerPolynomial = minpoly.parse()?;
        let h = match hint {
            Some(s) => {
                let (re, im) =
                    s.split_once(',').ok_or_else(|| AlgebraicError::Parse(format!("root hint `{s}` must be `re,im`")))?;
                Some((decimal_to_rational(re)?, decimal_to_rational(im)?))
            }
            None => None,
        };
        Self::new(f, h, trusted)
    }

    /// The imaginary unit, root of `x^2 + 1` in the upper half plane.
    pub fn i() -> Self {
        let f = IntegerPolynomial::from_i64(&[1, 0, 1]).expect("valid");
        Self::new(f, Some((Rational::new(), Rational::from(1))), false).expect("i is isolable")
    }

    pub fn minpoly(&self) -> &IntegerPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn root_hint(&self) -> &(Rational, Rational) {
        &self.hint
    }

    pub fn isolation_radius(&self) -> &Rational {
        &self.radius
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    fn hint_enclosure(&self, p: Precision) -> ComplexEnclosure {
        ComplexEnclosure::from_rationals(&self.hint.0, &self.hint.1, p)
    }

    fn choose_radius(&self, rs: &RootSet) -> Result<Option<Rational>, AlgebraicError> {
        let p = rs.precision();
        let h = self.hint_enclosure(p);
        let mut dist: Vec<(f64, usize, IntervalReal)> = (0..rs.len())
            .map(|i| {
                let d = (rs.center(i) - &h).abs();
                (d.to_f64(), i, d)
            })
            .collect();
        dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let (d1, i1, ref e1) = dist[0];
        let (d2, i2, ref e2) = dist[1];
        if d2 < 2.0 * d1 {
            let candidates = [i1, i2]
                .iter()
                .map(|&i| {
                    let c = rs.center(i);
                    format!("{:.12}{:+.12}i", c.re.to_f64(), c.im.to_f64())
                })
                .collect();
            return Err(AlgebraicError::AmbiguousHint { candidates });
        }
        let inner = e1 + rs.radius(i1);
        let outer = e2 - rs.radius(i2);
        if !outer.certainly_gt(&inner) {
            return Ok(None);
        }
        let mid = Float::with_val(p.bits(), inner.hi() + outer.lo()) / 2;
        let short = Float::with_val_round(24, &mid, Round::Nearest).0;
        let pick = if &short > inner.hi() && &short < outer.lo() { short } else { mid };
        let radius = float_to_rational(&pick);
        // every other disk must stay outside as well
        let r = IntervalReal::from_rational(&radius, p);
        for (_, j, d) in &dist[1..] {
            if !(d - rs.radius(*j)).certainly_gt(&r) {
                return Ok(None);
            }
        }
        Ok(Some(radius))
    }

    /// Certified isolating disks for all conjugates at precision `p`, or at
    /// the first higher precision where isolation succeeds.
    pub fn roots(&self, p: Precision) -> Result<Arc<RootSet>, AlgebraicError> {
        if let Some(rs) = self.cache.lock().expect("cache lock").get(&p.bits()) {
            return Ok(rs.clone());
        }
        for q in p.escalation() {
            if let Some(rs) = isolate_roots(&self.minpoly, q) {
                let rs = Arc::new(rs);
                self.cache.lock().expect("cache lock").insert(p.bits(), rs.clone());
                return Ok(rs);
            }
        }
        Err(AlgebraicError::Indeterminate(format!("root isolation failed for {}", self.minpoly)))
    }

    fn selected_index(&self, rs: &RootSet) -> Option<usize> {
        let p = rs.precision();
        let h = self.hint_enclosure(p);
        let r = IntervalReal::from_rational(&self.radius, p);
        let r_sq = r.sqr();
        let mut found = None;
        for i in 0..rs.len() {
            let b = rs.enclosure(i);
            let inside = [b.re.lo(), b.re.hi()].iter().all(|re| {
                [b.im.lo(), b.im.hi()].iter().all(|im| {
                    let c = ComplexEnclosure::from_point((*re).clone(), (*im).clone());
                    (&c - &h).abs_sq().certainly_lt(&r_sq)
                })
            });
            if inside {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            } else {
                let d = (rs.center(i) - &h).abs() - rs.radius(i);
                if !d.certainly_gt(&r) {
                    return None;
                }
            }
        }
        found
    }

    /// The root set together with the index of the selected root.
    pub fn locate(&self, p: Precision) -> Result<(Arc<RootSet>, usize), AlgebraicError> {
        for q in p.escalation() {
            let rs = self.roots(q)?;
            if let Some(i) = self.selected_index(&rs) {
                return Ok((rs, i));
            }
        }
        Err(AlgebraicError::Indeterminate("selected root not isolated inside its disk".into()))
    }

    pub fn enclosure(&self, p: Precision) -> Result<ComplexEnclosure, AlgebraicError> {
        let (rs, i) = self.locate(p)?;
        Ok(rs.enclosure(i).clone())
    }

    /// Pairwise disjoint boxes, one per conjugate.
    pub fn conjugate_enclosures(&self, p: Precision) -> Result<Vec<ComplexEnclosure>, AlgebraicError> {
        Ok(self.roots(p)?.enclosures().to_vec())
    }

    /// `h(α) = (log a + sum log max(1, |α_i|)) / d`.
    ///
    /// Conjugates whose boxes meet the unit circle are resolved exactly when
    /// the polynomial is self-inversive and the root is certified to lie on
    /// the circle; otherwise precision is raised.
    pub fn absolute_log_height(&self, p: Precision) -> Result<IntervalReal, AlgebraicError> {
        let self_inv = self.minpoly.is_self_inversive();
        'prec: for q in p.escalation() {
            let rs = self.roots(q)?;
            let mut sum = IntervalReal::from_integer(self.minpoly.leading(), q).ln()?;
            for i in 0..rs.len() {
                match rs.side_of_unit_circle(i) {
                    Some(std::cmp::Ordering::Less) => {}
                    Some(_) => {
                        let m = rs.enclosure(i).abs_sq().ln()?;
                        sum = sum + m.div_int(2)?;
                    }
                    None if self_inv && rs.is_certified_on_unit_circle(i) => {}
                    None => continue 'prec,
                }
            }
            let h = sum.div_int(self.degree() as i64)?;
            let zero = IntervalReal::zero(q);
            return Ok(h.max(&zero));
        }
        Err(AlgebraicError::Indeterminate("a conjugate straddles the unit circle".into()))
    }

    /// Exact decision of `|α| = 1`.
    pub fn has_unit_modulus(&self) -> Result<bool, AlgebraicError> {
        if !self.minpoly.is_self_inversive() {
            return Ok(false);
        }
        for q in Precision::DEFAULT.escalation() {
            let (rs, i) = self.locate(q)?;
            if rs.is_certified_on_unit_circle(i) {
                return Ok(true);
            }
            if rs.side_of_unit_circle(i).is_some() {
                return Ok(false);
            }
        }
        Err(AlgebraicError::Indeterminate("cannot separate the root from the unit circle".into()))
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.minpoly.is_cyclotomic()
    }

    /// Multiplicative order, for roots of unity.
    pub fn root_of_unity_order(&self) -> Option<usize> {
        self.minpoly.cyclotomic_order()
    }

    /// For a root of unity, the exact rational `q` with `arg α = q·pi`,
    /// `-1 < q <= 1`.
    pub fn argument_over_pi(&self, p: Precision) -> Result<Option<Rational>, AlgebraicError> {
        let Some(m) = self.root_of_unity_order() else { return Ok(None) };
        for q in p.escalation() {
            let arg = self.principal_argument(q)?;
            // arg = 2 pi k / m, so k = arg m / (2 pi) is an integer
            let t = (&arg * m as i64).div(&(IntervalReal::pi(q) * 2))?;
            if t.width() >= 1 {
                continue;
            }
            let Some(k) = t.lo().clone().ceil().to_integer() else { continue };
            if !t.contains_rational(&Rational::from(&k)) {
                continue;
            }
            let mut r = Rational::from((k * 2, Integer::from(m)));
            if r <= -1 {
                r += 2;
            }
            return Ok(Some(r));
        }
        Err(AlgebraicError::Indeterminate("argument of root of unity not resolved".into()))
    }

    /// `log |α|`; exactly zero for unit-modulus numbers.
    pub fn log_abs(&self, p: Precision) -> Result<IntervalReal, AlgebraicError> {
        if self.has_unit_modulus()? {
            return Ok(IntervalReal::zero(p));
        }
        let z = self.enclosure(p)?;
        Ok(z.abs_sq().ln()?.div_int(2)?)
    }

    /// `arg α` in `(-pi, pi]`. Real roots get the exact values `0` or `pi`.
    pub fn principal_argument(&self, p: Precision) -> Result<IntervalReal, AlgebraicError> {
        if self.degree() == 1 {
            let root = &self.hint.0;
            return match root.cmp0() {
                std::cmp::Ordering::Greater => Ok(IntervalReal::zero(p)),
                std::cmp::Ordering::Less => Ok(IntervalReal::pi(p)),
                std::cmp::Ordering::Equal => {
                    Err(NumericsError::Domain { op: "principal_argument", detail: "argument of zero".into() }.into())
                }
            };
        }
        for q in p.escalation() {
            let (rs, i) = self.locate(q)?;
            let b = rs.enclosure(i);
            if rs.is_certified_real(i) {
                if b.re.lo() > &0 {
                    return Ok(IntervalReal::zero(q));
                }
                if b.re.hi() < &0 {
                    return Ok(IntervalReal::pi(q));
                }
                continue;
            }
            if let Ok(a) = b.arg() {
                return Ok(a);
            }
        }
        Err(AlgebraicError::Indeterminate("argument straddles the branch cut".into()))
    }

    /// The complex conjugate `conj(α)`, selected by the mirrored disk.
    pub fn conjugate(&self) -> Self {
        AlgebraicNumber {
            minpoly: self.minpoly.clone(),
            hint: (self.hint.0.clone(), Rational::from(-&self.hint.1)),
            radius: self.radius.clone(),
            irreducibility: self.irreducibility,
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// Human-readable selector, `"re,im"` with the hint's exact decimals
    /// where possible.
    pub fn hint_string(&self) -> String {
        format!("{},{}", rational_to_decimal(&self.hint.0), rational_to_decimal(&self.hint.1))
    }
}

/// Exact decimal expansion when the denominator is of the form `2^a 5^b`,
/// otherwise `num/den`.
pub fn rational_to_decimal(q: &Rational) -> String {
    let mut den = q.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den.is_divisible_u(2) {
        den /= 2;
        twos += 1;
    }
    while den.is_divisible_u(5) {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return q.to_string();
    }
    let scale = twos.max(fives);
    if scale == 0 {
        return q.numer().to_string();
    }
    let shifted = (q.numer() * Integer::from(Integer::u_pow_u(10, scale))) / q.denom();
    let neg = shifted < 0;
    let digits = Integer::from(shifted.abs_ref()).to_string();
    let width = scale as usize + 1;
    let padded = format!("{digits:0>width$}");
    let (int_part, frac_part) = padded.split_at(padded.len() - scale as usize);
    let frac = frac_part.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(poly: &str, hint: Option<&str>) -> AlgebraicNumber {
        AlgebraicNumber::parse(poly, hint, false).unwrap()
    }

    #[test]
    fn height_fixed_cases() {
        let p = Precision::DEFAULT;
        let two = alg("-2,1", None);
        assert!((two.absolute_log_height(p).unwrap().to_f64() - 2f64.ln()).abs() < 1e-15);
        let i = AlgebraicNumber::i();
        assert!(i.absolute_log_height(p).unwrap().hi() < &1e-30);
        let g = alg("5,-6,5", Some("0.6,0.8"));
        let h = g.absolute_log_height(p).unwrap();
        assert!((h.to_f64() - 5f64.ln() / 2.0).abs() < 1e-15);
        assert!(h.width() < 1e-30);
    }

    #[test]
    fn unit_modulus_decisions() {
        assert!(AlgebraicNumber::i().has_unit_modulus().unwrap());
        assert!(alg("5,-6,5", Some("0.6,0.8")).has_unit_modulus().unwrap());
        assert!(!alg("-2,1", None).has_unit_modulus().unwrap());
        assert!(!alg("0,1", None).has_unit_modulus().unwrap());
        // self-inversive with real roots off the circle
        assert!(!alg("1,-3,1", Some("2.6,0")).has_unit_modulus().unwrap());
    }

    #[test]
    fn exact_arguments_of_roots_of_unity() {
        let p = Precision::DEFAULT;
        assert_eq!(AlgebraicNumber::i().argument_over_pi(p).unwrap(), Some(Rational::from((1, 2))));
        assert_eq!(alg("1,1", None).argument_over_pi(p).unwrap(), Some(Rational::from(1)));
        let w = alg("1,1,1", Some("-0.5,-0.87")).argument_over_pi(p).unwrap();
        assert_eq!(w, Some(Rational::from((-2, 3))));
        assert_eq!(alg("5,-6,5", Some("0.6,0.8")).argument_over_pi(p).unwrap(), None);
    }

    #[test]
    fn roots_of_unity() {
        assert!(AlgebraicNumber::i().is_root_of_unity());
        assert!(!alg("5,-6,5", Some("0.6,0.8")).is_root_of_unity());
    }

    #[test]
    fn arguments() {
        let p = Precision::DEFAULT;
        let a = AlgebraicNumber::i().principal_argument(p).unwrap();
        assert!((a.to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(alg("-1,1", None).principal_argument(p).unwrap().is_point());
        let m = alg("1,1", None).principal_argument(p).unwrap();
        assert_eq!(m, IntervalReal::pi(p));
        let r = alg("-2,0,1", Some("-1.4,0")).principal_argument(p).unwrap();
        assert_eq!(r, IntervalReal::pi(p));
        let g = alg("5,-6,5", Some("0.6,0.8")).principal_argument(p).unwrap();
        assert!((g.to_f64() - 4f64.atan2(3.0)).abs() < 1e-15);
        let gc = alg("5,-6,5", Some("0.6,0.8")).conjugate().principal_argument(p).unwrap();
        assert!((gc.to_f64() + 4f64.atan2(3.0)).abs() < 1e-15);
    }

    #[test]
    fn hint_validation() {
        assert!(matches!(AlgebraicNumber::parse("5,-6,5", Some("0.6,0"), false), Err(AlgebraicError::AmbiguousHint { .. })));
        assert!(matches!(AlgebraicNumber::parse("5,-6,5", None, false), Err(AlgebraicError::HintRequired(2))));
    }

    #[test]
    fn reducible_rejected_unless_trusted() {
        let r = AlgebraicNumber::parse("-1,0,0,1", Some("1,0"), false);
        assert!(matches!(r, Err(AlgebraicError::Reducible { .. })), "{r:?}");
        let t = AlgebraicNumber::parse("-1,0,0,1", Some("1,0"), true).unwrap();
        assert_eq!(t.irreducibility(), Irreducibility::Trusted);
        assert!(check_irreducible(&"2,0,0,0,1".parse().unwrap(), Precision::DEFAULT).is_ok());
        assert!(check_irreducible(&"4,0,0,0,1".parse().unwrap(), Precision::DEFAULT).is_err());
        assert!(check_irreducible(&"-6,5,1".parse().unwrap(), Precision::DEFAULT).is_err());
        assert!(check_irreducible(&"3,-8,4".parse().unwrap(), Precision::DEFAULT).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&Rational::from((3, 5))), "0.6");
        assert_eq!(rational_to_decimal(&Rational::from((-1, 8))), "-0.125");
        assert_eq!(rational_to_decimal(&Rational::from(7)), "7");
        assert_eq!(rational_to_decimal(&Rational::from((1, 3))), "1/3");
    }
}
