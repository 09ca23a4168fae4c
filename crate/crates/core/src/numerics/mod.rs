//! Certified real arithmetic.
//!
//! Every quantity that enters an inequality check is carried as an
//! [`IntervalReal`]: a closed interval with outward-rounded endpoints that is
//! guaranteed to contain the exact value. Endpoint arithmetic is delegated to
//! MPFR (through `rug`), which rounds every primitive correctly in the
//! requested direction.

mod interval;
mod special;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use interval::{atan2, decimal_to_rational, IntervalReal};
pub use special::{bernoulli_even, epsilon_of_n, log_factorial, log_superfactorial};

/// Working precision of interval endpoints, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 64;
    /// Default working precision.
    pub const DEFAULT: Precision = Precision(128);
    /// Ceiling for automatic escalation.
    pub const MAX_ESCALATION: Precision = Precision(1024);

    pub fn new(bits: u32) -> Result<Self, NumericsError> {
        if bits < Self::MIN_BITS {
            return Err(NumericsError::PrecisionTooLow(bits));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn doubled(self) -> Precision {
        Precision(self.0.saturating_mul(2))
    }

    /// `self, 2·self, 4·self, …` up to [`Precision::MAX_ESCALATION`]. Always
    /// yields at least `self`, even when it already exceeds the ceiling.
    pub fn escalation(self) -> impl Iterator<Item = Precision> {
        let mut next = Some(self);
        std::iter::from_fn(move || {
            let current = next?;
            next = (current < Self::MAX_ESCALATION).then(|| current.doubled());
            Some(current)
        })
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl TryFrom<u32> for Precision {
    type Error = NumericsError;

    fn try_from(bits: u32) -> Result<Self, Self::Error> {
        Precision::new(bits)
    }
}

impl From<Precision> for u32 {
    fn from(p: Precision) -> u32 {
        p.0
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(u32),
    #[error("lower endpoint exceeds upper endpoint")]
    Inverted,
    #[error("cannot parse `{0}` as a decimal number")]
    Parse(String),
    #[error("wrong number of arguments for {op}: expected {expected}, got {got}")]
    Arity { op: &'static str, expected: usize, got: usize },
}

/// Outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Holds for every point of every input enclosure.
    Verified,
    /// Fails for every point of every input enclosure.
    Failed,
    /// The enclosure straddles the threshold.
    Indeterminate,
}

impl Status {
    pub fn is_verified(self) -> bool {
        self == Status::Verified
    }

    /// Conjunction: failed dominates indeterminate, which dominates verified.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Failed, _) | (_, Failed) => Failed,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => Verified,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named mathematical constants with certified enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Pi,
    EulerE,
}

impl FromStr for Constant {
    type Err = NumericsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pi" => Ok(Constant::Pi),
            "euler_e" | "e" => Ok(Constant::EulerE),
            other => Err(NumericsError::UnknownConstant(other.to_string())),
        }
    }
}

pub fn enclose_constant(name: Constant, p: Precision) -> IntervalReal {
    match name {
        Constant::Pi => IntervalReal::pi(p),
        Constant::EulerE => IntervalReal::e(p),
    }
}

/// Elementary operations reachable through [`elementary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Log,
    Exp,
    Sqrt,
    PowReal,
    Atan2,
}

impl ElementaryOp {
    fn arity(self) -> usize {
        match self {
            ElementaryOp::Log | ElementaryOp::Exp | ElementaryOp::Sqrt => 1,
            _ => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ElementaryOp::Add => "add",
            ElementaryOp::Sub => "sub",
            ElementaryOp::Mul => "mul",
            ElementaryOp::Div => "div",
            ElementaryOp::Log => "log",
            ElementaryOp::Exp => "exp",
            ElementaryOp::Sqrt => "sqrt",
            ElementaryOp::PowReal => "pow_real",
            ElementaryOp::Atan2 => "atan2",
        }
    }
}

/// Uniform entry point over the elementary operations. Arguments are rounded
/// to `p` first, so the result is an enclosure at precision `p`.
///
/// `Atan2` takes `(y, x)` in that order.
pub fn elementary(op: ElementaryOp, args: &[IntervalReal], p: Precision) -> Result<IntervalReal, NumericsError> {
    if args.len() != op.arity() {
        return Err(NumericsError::Arity { op: op.name(), expected: op.arity(), got: args.len() });
    }
    let a: Vec<IntervalReal> = args.iter().map(|x| x.round_to(p)).collect();
    match op {
        ElementaryOp::Add => Ok(&a[0] + &a[1]),
        ElementaryOp::Sub => Ok(&a[0] - &a[1]),
        ElementaryOp::Mul => Ok(&a[0] * &a[1]),
        ElementaryOp::Div => a[0].div(&a[1]),
        ElementaryOp::Log => a[0].ln(),
        ElementaryOp::Exp => Ok(a[0].exp()),
        ElementaryOp::Sqrt => a[0].sqrt(),
        ElementaryOp::PowReal => a[0].pow_real(&a[1]),
        ElementaryOp::Atan2 => atan2(&a[0], &a[1]),
    }
}

/// Runs `attempt` at increasing precision until it stops reporting an
/// indeterminate outcome or the escalation ceiling is reached. The last
/// outcome is returned either way.
pub fn with_escalation<T>(start: Precision, mut attempt: impl FnMut(Precision) -> T, indeterminate: impl Fn(&T) -> bool) -> T {
    let mut steps = start.escalation().peekable();
    loop {
        let p = steps.next().expect("escalation yields at least one precision");
        let out = attempt(p);
        if !indeterminate(&out) || steps.peek().is_none() {
            return out;
        }
    }
}
