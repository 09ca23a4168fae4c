use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant as MpConstant, Round};
use rug::ops::AssignRound;
use rug::{Float, Integer, Rational};

use super::{NumericsError, Precision, Status};

fn rd<T>(prec: u32, v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Down).0
}

fn ru<T>(prec: u32, v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Up).0
}

// Signed zeros would otherwise leak into atan2 and flip pi to -pi.
fn unsign_zero(mut x: Float) -> Float {
    if x.is_zero() {
        x = Float::with_val(x.prec(), 0);
    }
    x
}

fn min_f(a: Float, b: Float) -> Float {
    if b < a {
        b
    } else {
        a
    }
}

fn max_f(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

/// Closed interval `[lo, hi]` of reals with MPFR endpoints.
///
/// Invariant: `lo <= hi`, both finite. Every operation rounds the lower
/// endpoint toward `-inf` and the upper toward `+inf`, so the exact result of
/// applying the operation to any points of the inputs lies inside the output.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalReal {
    lo: Float,
    hi: Float,
}

impl IntervalReal {
    fn make(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        IntervalReal { lo: unsign_zero(lo), hi: unsign_zero(hi) }
    }

    pub fn from_bounds(lo: Float, hi: Float) -> Result<Self, NumericsError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(NumericsError::Domain { op: "from_bounds", detail: "non-finite endpoint".into() });
        }
        if lo > hi {
            return Err(NumericsError::Inverted);
        }
        Ok(Self::make(lo, hi))
    }

    /// Degenerate interval at an exactly representable point.
    pub fn point(x: Float) -> Self {
        assert!(x.is_finite(), "point interval needs a finite value");
        Self::make(x.clone(), x)
    }

    pub fn from_int(v: i64, p: Precision) -> Self {
        Self::make(rd(p.bits(), v), ru(p.bits(), v))
    }

    pub fn from_integer(v: &Integer, p: Precision) -> Self {
        Self::make(rd(p.bits(), v), ru(p.bits(), v))
    }

    pub fn from_rational(v: &Rational, p: Precision) -> Self {
        Self::make(rd(p.bits(), v), ru(p.bits(), v))
    }

    /// Encloses a decimal literal such as `"9.05"` or `"-2.5e-3"` exactly,
    /// without passing through binary floating point.
    pub fn from_decimal(s: &str, p: Precision) -> Result<Self, NumericsError> {
        Ok(Self::from_rational(&decimal_to_rational(s)?, p))
    }

    pub fn zero(p: Precision) -> Self {
        Self::from_int(0, p)
    }

    pub fn one(p: Precision) -> Self {
        Self::from_int(1, p)
    }

    pub fn pi(p: Precision) -> Self {
        Self::make(rd(p.bits(), MpConstant::Pi), ru(p.bits(), MpConstant::Pi))
    }

    pub fn e(p: Precision) -> Self {
        let one = Float::with_val(p.bits(), 1);
        Self::make(rd(p.bits(), one.exp_ref()), ru(p.bits(), one.exp_ref()))
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Working precision of the endpoints.
    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn precision(&self) -> Precision {
        Precision(self.prec().max(Precision::MIN_BITS))
    }

    /// Re-rounds the endpoints outward to precision `p`.
    pub fn round_to(&self, p: Precision) -> Self {
        Self::make(rd(p.bits(), &self.lo), ru(p.bits(), &self.hi))
    }

    pub fn mid(&self) -> Float {
        let p = self.prec() + 2;
        let s = Float::with_val(p, &self.lo + &self.hi);
        s / 2
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> Float {
        ru(self.prec(), &self.hi - &self.lo)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn contains(&self, x: &Float) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        self.lo <= *x && self.hi >= *x
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// True when `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &IntervalReal) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &IntervalReal) -> Self {
        Self::make(min_f(self.lo.clone(), other.lo.clone()), max_f(self.hi.clone(), other.hi.clone()))
    }

    pub fn intersect(&self, other: &IntervalReal) -> Option<Self> {
        let lo = max_f(self.lo.clone(), other.lo.clone());
        let hi = min_f(self.hi.clone(), other.hi.clone());
        (lo <= hi).then(|| Self::make(lo, hi))
    }

    pub fn max(&self, other: &IntervalReal) -> Self {
        Self::make(max_f(self.lo.clone(), other.lo.clone()), max_f(self.hi.clone(), other.hi.clone()))
    }

    pub fn min(&self, other: &IntervalReal) -> Self {
        Self::make(min_f(self.lo.clone(), other.lo.clone()), min_f(self.hi.clone(), other.hi.clone()))
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            let m = max_f(Float::with_val(self.prec(), -&self.lo), self.hi.clone());
            Self::make(Float::with_val(self.prec(), 0), m)
        }
    }

    pub fn sqr(&self) -> Self {
        let p = self.prec();
        if self.lo >= 0 {
            Self::make(rd(p, self.lo.square_ref()), ru(p, self.hi.square_ref()))
        } else if self.hi <= 0 {
            Self::make(rd(p, self.hi.square_ref()), ru(p, self.lo.square_ref()))
        } else {
            let top = max_f(ru(p, self.lo.square_ref()), ru(p, self.hi.square_ref()));
            Self::make(Float::with_val(p, 0), top)
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut result = Self::one(self.precision());
        let mut base = self.clone();
        let mut e = n;
        let mut odd_factors = false;
        while e > 0 {
            if e & 1 == 1 {
                result = if odd_factors { &result * &base } else { base.clone() };
                odd_factors = true;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    pub fn div(&self, other: &IntervalReal) -> Result<Self, NumericsError> {
        if other.contains_zero() {
            return Err(NumericsError::Domain { op: "div", detail: format!("divisor {other} contains zero") });
        }
        let p = self.prec().max(other.prec());
        let (mut lo, mut hi) = (None::<Float>, None::<Float>);
        for x in [&self.lo, &self.hi] {
            for y in [&other.lo, &other.hi] {
                let d = rd(p, x / y);
                let u = ru(p, x / y);
                lo = Some(match lo {
                    Some(c) => min_f(c, d),
                    None => d,
                });
                hi = Some(match hi {
                    Some(c) => max_f(c, u),
                    None => u,
                });
            }
        }
        Ok(Self::make(lo.unwrap(), hi.unwrap()))
    }

    pub fn recip(&self) -> Result<Self, NumericsError> {
        Self::one(self.precision()).div(self)
    }

    pub fn div_int(&self, n: i64) -> Result<Self, NumericsError> {
        self.div(&Self::from_int(n, self.precision()))
    }

    pub fn sqrt(&self) -> Result<Self, NumericsError> {
        if self.lo < 0 {
            return Err(NumericsError::Domain { op: "sqrt", detail: format!("argument {self} has a negative part") });
        }
        let p = self.prec();
        Ok(Self::make(rd(p, self.lo.sqrt_ref()), ru(p, self.hi.sqrt_ref())))
    }

    pub fn ln(&self) -> Result<Self, NumericsError> {
        if self.lo <= 0 {
            return Err(NumericsError::Domain { op: "log", detail: format!("argument {self} is not positive") });
        }
        let p = self.prec();
        Ok(Self::make(rd(p, self.lo.ln_ref()), ru(p, self.hi.ln_ref())))
    }

    /// `ln(1 + x)`, accurate for small `x`.
    pub fn ln_1p(&self) -> Result<Self, NumericsError> {
        if self.lo <= -1 {
            return Err(NumericsError::Domain { op: "log1p", detail: format!("argument {self} is not above -1") });
        }
        let p = self.prec();
        Ok(Self::make(rd(p, self.lo.ln_1p_ref()), ru(p, self.hi.ln_1p_ref())))
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        Self::make(rd(p, self.lo.exp_ref()), ru(p, self.hi.exp_ref()))
    }

    /// `self^y` for a positive base.
    pub fn pow_real(&self, y: &IntervalReal) -> Result<Self, NumericsError> {
        if self.lo <= 0 {
            return Err(NumericsError::Domain { op: "pow_real", detail: format!("base {self} is not positive") });
        }
        Ok((y * &self.ln()?).exp())
    }

    /// Sign test against zero.
    pub fn positive_status(&self) -> Status {
        if self.lo > 0 {
            Status::Verified
        } else if self.hi <= 0 {
            Status::Failed
        } else {
            Status::Indeterminate
        }
    }

    /// `self > other` for every choice of points.
    pub fn gt_status(&self, other: &IntervalReal) -> Status {
        if self.lo > other.hi {
            Status::Verified
        } else if self.hi <= other.lo {
            Status::Failed
        } else {
            Status::Indeterminate
        }
    }

    pub fn lt_status(&self, other: &IntervalReal) -> Status {
        other.gt_status(self)
    }

    pub fn ge_status(&self, other: &IntervalReal) -> Status {
        if self.lo >= other.hi {
            Status::Verified
        } else if self.hi < other.lo {
            Status::Failed
        } else {
            Status::Indeterminate
        }
    }

    pub fn le_status(&self, other: &IntervalReal) -> Status {
        other.ge_status(self)
    }

    pub fn certainly_gt(&self, other: &IntervalReal) -> bool {
        self.lo > other.hi
    }

    pub fn certainly_lt(&self, other: &IntervalReal) -> bool {
        self.hi < other.lo
    }

    /// The common floor of every point, if there is one.
    pub fn floor_unique(&self) -> Option<Integer> {
        let a = self.lo.clone().floor().to_integer()?;
        let b = self.hi.clone().floor().to_integer()?;
        (a == b).then_some(a)
    }

    pub fn ceil_unique(&self) -> Option<Integer> {
        let a = self.lo.clone().ceil().to_integer()?;
        let b = self.hi.clone().ceil().to_integer()?;
        (a == b).then_some(a)
    }

    /// Nearest integer with ties to even, if it is the same for every point.
    pub fn round_even_unique(&self) -> Option<Integer> {
        let a = self.lo.clone().round_even().to_integer()?;
        let b = self.hi.clone().round_even().to_integer()?;
        (a == b).then_some(a)
    }

    /// Decimal renderings of the endpoints with `digits` significant digits,
    /// rounded outward so the printed interval still encloses this one.
    pub fn endpoints_decimal(&self, digits: usize) -> (String, String) {
        let d = Some(digits.max(1));
        (self.lo.to_string_radix_round(10, d, Round::Down), self.hi.to_string_radix_round(10, d, Round::Up))
    }
}

/// `atan2(y, x)` over a box. Refuses boxes that touch the origin or cross the
/// branch cut along the negative real axis, where the function is not
/// continuous.
pub fn atan2(y: &IntervalReal, x: &IntervalReal) -> Result<IntervalReal, NumericsError> {
    if x.contains_zero() && y.contains_zero() {
        return Err(NumericsError::Domain { op: "atan2", detail: "box contains the origin".into() });
    }
    if x.lo < 0 && y.lo < 0 && y.hi >= 0 {
        return Err(NumericsError::Domain { op: "atan2", detail: "box straddles the branch cut".into() });
    }
    let p = x.prec().max(y.prec());
    let (mut lo, mut hi) = (None::<Float>, None::<Float>);
    for yy in [&y.lo, &y.hi] {
        for xx in [&x.lo, &x.hi] {
            let d = rd(p, yy.atan2_ref(xx));
            let u = ru(p, yy.atan2_ref(xx));
            lo = Some(match lo {
                Some(c) => min_f(c, d),
                None => d,
            });
            hi = Some(match hi {
                Some(c) => max_f(c, u),
                None => u,
            });
        }
    }
    Ok(IntervalReal::make(lo.unwrap(), hi.unwrap()))
}

/// Parses a plain decimal literal (`123`, `-4.56`, `7.5e-3`) into an exact
/// rational.
pub fn decimal_to_rational(s: &str) -> Result<Rational, NumericsError> {
    let err = || NumericsError::Parse(s.to_string());
    let t = s.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num = Integer::from_str_radix(if all.is_empty() { "0" } else { &all }, 10).map_err(|_| err())?;
    if neg {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let pow = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
    Ok(if scale >= 0 { Rational::from(num * pow) } else { Rational::from((num, pow)) })
}

impl fmt::Display for IntervalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.endpoints_decimal(17);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Neg for &IntervalReal {
    type Output = IntervalReal;
    fn neg(self) -> IntervalReal {
        IntervalReal::make(Float::with_val(self.hi.prec(), -&self.hi), Float::with_val(self.lo.prec(), -&self.lo))
    }
}

impl Neg for IntervalReal {
    type Output = IntervalReal;
    fn neg(self) -> IntervalReal {
        -&self
    }
}

fn add_impl(a: &IntervalReal, b: &IntervalReal) -> IntervalReal {
    let p = a.prec().max(b.prec());
    IntervalReal::make(rd(p, &a.lo + &b.lo), ru(p, &a.hi + &b.hi))
}

fn sub_impl(a: &IntervalReal, b: &IntervalReal) -> IntervalReal {
    let p = a.prec().max(b.prec());
    IntervalReal::make(rd(p, &a.lo - &b.hi), ru(p, &a.hi - &b.lo))
}

fn mul_impl(a: &IntervalReal, b: &IntervalReal) -> IntervalReal {
    let p = a.prec().max(b.prec());
    let (mut lo, mut hi) = (None::<Float>, None::<Float>);
    for x in [&a.lo, &a.hi] {
        for y in [&b.lo, &b.hi] {
            let d = rd(p, x * y);
            let u = ru(p, x * y);
            lo = Some(match lo {
                Some(c) => min_f(c, d),
                None => d,
            });
            hi = Some(match hi {
                Some(c) => max_f(c, u),
                None => u,
            });
        }
    }
    IntervalReal::make(lo.unwrap(), hi.unwrap())
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&IntervalReal> for &IntervalReal {
            type Output = IntervalReal;
            fn $m(self, rhs: &IntervalReal) -> IntervalReal {
                $f(self, rhs)
            }
        }
        impl $tr<IntervalReal> for &IntervalReal {
            type Output = IntervalReal;
            fn $m(self, rhs: IntervalReal) -> IntervalReal {
                $f(self, &rhs)
            }
        }
        impl $tr<&IntervalReal> for IntervalReal {
            type Output = IntervalReal;
            fn $m(self, rhs: &IntervalReal) -> IntervalReal {
                $f(&self, rhs)
            }
        }
        impl $tr<IntervalReal> for IntervalReal {
            type Output = IntervalReal;
            fn $m(self, rhs: IntervalReal) -> IntervalReal {
                $f(&self, &rhs)
            }
        }
        impl $tr<i64> for &IntervalReal {
            type Output = IntervalReal;
            fn $m(self, rhs: i64) -> IntervalReal {
                $f(self, &IntervalReal::from_int(rhs, self.precision()))
            }
        }
        impl $tr<i64> for IntervalReal {
            type Output = IntervalReal;
            fn $m(self, rhs: i64) -> IntervalReal {
                $f(&self, &IntervalReal::from_int(rhs, self.precision()))
            }
        }
        impl $tr<&IntervalReal> for i64 {
            type Output = IntervalReal;
            fn $m(self, rhs: &IntervalReal) -> IntervalReal {
                $f(&IntervalReal::from_int(self, rhs.precision()), rhs)
            }
        }
        impl $tr<IntervalReal> for i64 {
            type Output = IntervalReal;
            fn $m(self, rhs: IntervalReal) -> IntervalReal {
                $f(&IntervalReal::from_int(self, rhs.precision()), &rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);
