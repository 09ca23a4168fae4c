use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Float, Rational};

use crate::numerics::{atan2, IntervalReal, NumericsError, Precision};

/// Axis-aligned box `re × im` in the complex plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexEnclosure {
    pub re: IntervalReal,
    pub im: IntervalReal,
}

impl ComplexEnclosure {
    pub fn new(re: IntervalReal, im: IntervalReal) -> Self {
        ComplexEnclosure { re, im }
    }

    pub fn from_rationals(re: &Rational, im: &Rational, p: Precision) -> Self {
        Self::new(IntervalReal::from_rational(re, p), IntervalReal::from_rational(im, p))
    }

    pub fn from_point(re: Float, im: Float) -> Self {
        Self::new(IntervalReal::point(re), IntervalReal::point(im))
    }

    pub fn real(x: IntervalReal) -> Self {
        let p = x.precision();
        Self::new(x, IntervalReal::zero(p))
    }

    pub fn zero(p: Precision) -> Self {
        Self::new(IntervalReal::zero(p), IntervalReal::zero(p))
    }

    pub fn one(p: Precision) -> Self {
        Self::new(IntervalReal::one(p), IntervalReal::zero(p))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn abs_sq(&self) -> IntervalReal {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> IntervalReal {
        self.abs_sq().sqrt().expect("sum of squares is nonnegative")
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> Result<IntervalReal, NumericsError> {
        atan2(&self.im, &self.re)
    }

    pub fn div(&self, other: &ComplexEnclosure) -> Result<Self, NumericsError> {
        let den = other.abs_sq();
        let num = self * &other.conj();
        Ok(Self::new(num.re.div(&den)?, num.im.div(&den)?))
    }

    pub fn recip(&self) -> Result<Self, NumericsError> {
        Self::one(self.re.precision()).div(self)
    }

    pub fn scale(&self, k: &IntervalReal) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn hull(&self, other: &ComplexEnclosure) -> Self {
        Self::new(self.re.hull(&other.re), self.im.hull(&other.im))
    }
}

impl fmt::Display for ComplexEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Add for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn add(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        ComplexEnclosure::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn sub(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        ComplexEnclosure::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn mul(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        ComplexEnclosure::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Neg for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn neg(self) -> ComplexEnclosure {
        ComplexEnclosure::new(-&self.re, -&self.im)
    }
}
