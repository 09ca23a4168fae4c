//! Verification engine for the two-logarithm interpolation estimate.
//!
//! Given `Λ = b2 log α2 − b1 log α1` and a parameter choice, the engine
//! certifies the height, cardinality and main conditions and then turns the
//! estimate `|Λ'| > ρ^{-μKL}` into a lower bound for `log |Λ|`.

mod conditions;

use std::fmt;

use rug::{Integer, Rational};
use thiserror::Error;

pub use conditions::{
    check_height_condition, check_main_inequality, check_multiplicity_condition, distinct_combination_count, main_inequality_lhs,
    CombinationCount, CombinationMethod,
};

use crate::algebraic::{AlgebraicError, AlgebraicNumber};
use crate::numerics::{log_superfactorial, IntervalReal, NumericsError, Precision, Status};

#[derive(Debug, Clone, Error)]
pub enum EngineError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("refusing to conclude: conditions not all verified ({0})")]
    NotVerified(String),
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Where the degree parameter `D` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeSource {
    /// `α1 = i` and `D = deg(α2)/2`.
    ImaginaryUnitShape,
    /// Supplied by the caller and taken on trust.
    Declared,
}

/// The linear form `b2 log α2 − b1 log α1` together with `D`.
#[derive(Clone, Debug)]
pub struct TwoLogInstance {
    pub alpha1: AlgebraicNumber,
    pub alpha2: AlgebraicNumber,
    pub b1: Integer,
    pub b2: Integer,
    pub d: Rational,
    pub d_source: DegreeSource,
}

impl TwoLogInstance {
    /// `α1 = i`, `α2 = α` non-real with minimal polynomial of even degree
    /// `2D`. This presumes `i ∈ Q(α)`; see the assumption trail.
    pub fn imaginary_unit_shape(alpha: AlgebraicNumber, b1: Integer, b2: Integer) -> Result<Self, EngineError> {
        check_positive(&b1, &b2)?;
        let deg = alpha.degree();
        if !deg.is_multiple_of(2) {
            return Err(EngineError::InvalidInstance(format!("minimal polynomial has odd degree {deg}")));
        }
        Ok(TwoLogInstance {
            alpha1: AlgebraicNumber::i(),
            alpha2: alpha,
            b1,
            b2,
            d: Rational::from(deg as u64 / 2),
            d_source: DegreeSource::ImaginaryUnitShape,
        })
    }

    /// Any pair, with `D` declared by the caller.
    pub fn declared(
        alpha1: AlgebraicNumber,
        alpha2: AlgebraicNumber,
        b1: Integer,
        b2: Integer,
        d: Rational,
    ) -> Result<Self, EngineError> {
        check_positive(&b1, &b2)?;
        if d <= 0 {
            return Err(EngineError::InvalidInstance("D must be positive".into()));
        }
        Ok(TwoLogInstance { alpha1, alpha2, b1, b2, d, d_source: DegreeSource::Declared })
    }

    pub fn d_interval(&self, p: Precision) -> IntervalReal {
        IntervalReal::from_rational(&self.d, p)
    }

    pub fn assumptions(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self.d_source {
            DegreeSource::ImaginaryUnitShape => {
                out.push(format!("D = deg(minpoly)/2 = {} (presumes i lies in Q(alpha))", self.d))
            }
            DegreeSource::Declared => out.push(format!("D = {} declared by caller (trusted)", self.d)),
        }
        out.push("height condition read with -log|alpha_i|".into());
        out
    }
}

fn check_positive(b1: &Integer, b2: &Integer) -> Result<(), EngineError> {
    if *b1 < 1 || *b2 < 1 {
        return Err(EngineError::InvalidInstance("b1 and b2 must be positive integers".into()));
    }
    Ok(())
}

/// Free parameters `(K, L, R1, R2, S1, S2, ρ, μ)`. `ρ` and `μ` are kept as
/// exact rationals and enclosed at whatever precision a check runs at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentParams {
    pub k: u64,
    pub l: u64,
    pub r1: u64,
    pub r2: u64,
    pub s1: u64,
    pub s2: u64,
    pub rho: Rational,
    pub mu: Rational,
}

impl LaurentParams {
    pub fn validate(&self) -> Result<(), EngineError> {
        if self.k < 2 {
            return Err(EngineError::InvalidParams("K must be at least 2".into()));
        }
        if [self.l, self.r1, self.r2, self.s1, self.s2].contains(&0) {
            return Err(EngineError::InvalidParams("L, R1, R2, S1, S2 must be positive".into()));
        }
        if self.rho <= 1 {
            return Err(EngineError::InvalidParams("rho must exceed 1".into()));
        }
        if self.mu < (1, 3) || self.mu > 1 {
            return Err(EngineError::InvalidParams("mu must lie in [1/3, 1]".into()));
        }
        Ok(())
    }

    pub fn rho(&self, p: Precision) -> IntervalReal {
        IntervalReal::from_rational(&self.rho, p)
    }

    pub fn mu(&self, p: Precision) -> IntervalReal {
        IntervalReal::from_rational(&self.mu, p)
    }

    pub fn big_r(&self) -> u64 {
        self.r1 + self.r2 - 1
    }

    pub fn big_s(&self) -> u64 {
        self.s1 + self.s2 - 1
    }

    pub fn n(&self) -> u64 {
        self.k * self.l
    }
}

impl fmt::Display for LaurentParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K={} L={} R1={} R2={} S1={} S2={} rho={} mu={}",
            self.k, self.l, self.r1, self.r2, self.s1, self.s2, self.rho, self.mu
        )
    }
}

/// `R, S, N` exactly; `g, σ, log b` as enclosures.
#[derive(Clone, Debug)]
pub struct DerivedQuantities {
    pub r: u64,
    pub s: u64,
    pub n: u64,
    pub g: IntervalReal,
    pub g_exact: Rational,
    pub sigma: IntervalReal,
    /// `None` when `(R−1) b2 + (S−1) b1 = 0`, i.e. `b = 0`.
    pub log_b: Option<IntervalReal>,
}

impl DerivedQuantities {
    pub fn b(&self, p: Precision) -> IntervalReal {
        match &self.log_b {
            Some(l) => l.exp(),
            None => IntervalReal::zero(p),
        }
    }
}

pub fn derive_quantities(params: &LaurentParams, inst: &TwoLogInstance, p: Precision) -> DerivedQuantities {
    let r = params.big_r();
    let s = params.big_s();
    let n = params.n();
    let g_exact = Rational::from((1, 4)) - Rational::from((Integer::from(n), Integer::from(12) * r * s));
    let mu = &params.mu;
    let sigma_exact = (Rational::from(1) + Rational::from(mu * 2u32) - Rational::from(mu * mu)) / 2u32;
    let front = Integer::from((r - 1) * &inst.b2) + Integer::from((s - 1) * &inst.b1);
    let log_b = if front == 0 {
        None
    } else {
        let k = params.k;
        // (prod_{j<K} j!)^(-2/(K^2-K))
        let lsf = log_superfactorial(k - 1, p);
        let expo = Rational::from((2, Integer::from(k) * (k - 1)));
        let half_front = Rational::from((front, 2));
        let base = IntervalReal::from_rational(&half_front, p).ln().expect("positive");
        Some(base - lsf * IntervalReal::from_rational(&expo, p))
    };
    DerivedQuantities {
        r,
        s,
        n,
        g: IntervalReal::from_rational(&g_exact, p),
        g_exact,
        sigma: IntervalReal::from_rational(&sigma_exact, p),
        log_b,
    }
}

/// A height parameter `a_i`.
#[derive(Clone, Debug, PartialEq)]
pub enum HeightParam {
    /// An explicit enclosure.
    Value(IntervalReal),
    /// `ρ · pi_coeff · π + [2D h(α_i)] + extra`, kept symbolic so that the
    /// height condition can hold with exact equality.
    Structured { pi_coeff: Rational, with_height: bool, extra: Rational },
}

impl HeightParam {
    pub fn value(
        &self,
        rho: &Rational,
        inst_d: &Rational,
        alpha: &AlgebraicNumber,
        p: Precision,
    ) -> Result<IntervalReal, EngineError> {
        match self {
            HeightParam::Value(v) => Ok(v.round_to(p)),
            HeightParam::Structured { pi_coeff, with_height, extra } => {
                let c = Rational::from(rho * pi_coeff);
                let mut v = IntervalReal::from_rational(&c, p) * IntervalReal::pi(p) + IntervalReal::from_rational(extra, p);
                if *with_height {
                    let h = alpha.absolute_log_height(p)?;
                    v = v + IntervalReal::from_rational(inst_d, p) * 2 * h;
                }
                Ok(v)
            }
        }
    }
}

/// Outcome of one certified condition.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub name: &'static str,
    pub status: Status,
    pub margin: IntervalReal,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub conditions: Vec<ConditionReport>,
    pub precision: Precision,
}

impl VerificationReport {
    pub fn all_verified(&self) -> bool {
        self.conditions.iter().all(|c| c.status.is_verified())
    }

    pub fn overall(&self) -> Status {
        self.conditions.iter().fold(Status::Verified, |acc, c| acc.and(c.status))
    }

    pub fn get(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn summary(&self) -> String {
        self.conditions
            .iter()
            .filter(|c| !c.status.is_verified())
            .map(|c| format!("{}: {}", c.name, c.status))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub const COND_HEIGHT_1: &str = "height_alpha1";
pub const COND_HEIGHT_2: &str = "height_alpha2";
pub const COND_DISTINCT_PRODUCTS: &str = "distinct_products";
pub const COND_DISTINCT_COMBINATIONS: &str = "distinct_combinations";
pub const COND_MAIN: &str = "main_inequality";

fn verify_once(
    params: &LaurentParams,
    inst: &TwoLogInstance,
    a1: &HeightParam,
    a2: &HeightParam,
    p: Precision,
) -> Result<VerificationReport, EngineError> {
    let rho = params.rho(p);
    let h1 = check_height_condition(a1, &inst.alpha1, inst, &params.rho, p)?;
    let h2 = check_height_condition(a2, &inst.alpha2, inst, &params.rho, p)?;
    let (m1, m2) = check_multiplicity_condition(params, inst, p)?;
    let dq = derive_quantities(params, inst, p);
    let a1v = a1.value(&params.rho, &inst.d, &inst.alpha1, p)?;
    let a2v = a2.value(&params.rho, &inst.d, &inst.alpha2, p)?;
    let main = check_main_inequality(params, &dq, &a1v, &a2v, inst, &rho, p)?;
    let mut conds = vec![h1, h2, m1, m2, main];
    conds[0].name = COND_HEIGHT_1;
    conds[1].name = COND_HEIGHT_2;
    Ok(VerificationReport { conditions: conds, precision: p })
}

/// Certifies every hypothesis, raising precision while anything is
/// indeterminate.
pub fn verify(
    params: &LaurentParams,
    inst: &TwoLogInstance,
    a1: &HeightParam,
    a2: &HeightParam,
    p: Precision,
) -> Result<VerificationReport, EngineError> {
    params.validate()?;
    let mut last = None;
    for q in p.escalation() {
        let rep = verify_once(params, inst, a1, a2, q)?;
        if rep.overall() != Status::Indeterminate {
            return Ok(rep);
        }
        last = Some(rep);
    }
    Ok(last.expect("at least one precision tried"))
}

/// Certified consequence of a verified report.
#[derive(Clone, Debug)]
pub struct Conclusion {
    /// `log |Λ| >= bound.lo()`.
    pub bound: IntervalReal,
    /// `μ K L log ρ`.
    pub main_term: IntervalReal,
    /// `log max{LS e^{LS e^T/(2 b2)}/(2 b2), LR e^{LR e^T/(2 b1)}/(2 b1)}`.
    pub log_conversion: IntervalReal,
    pub threshold: IntervalReal,
    /// `−main_term − log_conversion`, valid when `log |Λ| < T`.
    pub derived: IntervalReal,
    /// The threshold itself is the binding bound.
    pub threshold_binding: bool,
    pub trail: Vec<String>,
}

/// `log M(T)` for the conversion `|Λ'| <= |Λ| M(T)` under `log |Λ| < T`.
pub fn log_conversion_factor(
    params: &LaurentParams,
    inst: &TwoLogInstance,
    threshold: &IntervalReal,
    p: Precision,
) -> Result<IntervalReal, EngineError> {
    let l = params.l as i64;
    let e_t = threshold.exp();
    let branch = |size: u64, b: &Integer| -> Result<IntervalReal, EngineError> {
        let ls = IntervalReal::from_int(l * size as i64, p);
        let two_b = IntervalReal::from_integer(&Integer::from(b * 2u32), p);
        Ok(ls.ln()? - two_b.ln()? + (&ls * &e_t).div(&two_b)?)
    };
    let s_branch = branch(params.big_s(), &inst.b2)?;
    let r_branch = branch(params.big_r(), &inst.b1)?;
    Ok(s_branch.max(&r_branch))
}

/// Turns a fully verified report into `log |Λ| >= min(T, B(T))`.
///
/// Either `log |Λ| >= T`, or `|Λ| < e^T` bounds the exponentials in `Λ'`
/// and `log |Λ| > −μKL log ρ − log M(T) = B(T)`.
pub fn conclude_bound(
    params: &LaurentParams,
    inst: &TwoLogInstance,
    report: &VerificationReport,
    threshold: &IntervalReal,
    p: Precision,
) -> Result<Conclusion, EngineError> {
    if !report.all_verified() {
        return Err(EngineError::NotVerified(report.summary()));
    }
    let kl = IntervalReal::from_integer(&Integer::from(params.n()), p);
    let main_term = params.mu(p) * kl * params.rho(p).ln()?;
    let log_conversion = log_conversion_factor(params, inst, threshold, p)?;
    let derived = -(&main_term + &log_conversion);
    let threshold_binding = derived.certainly_gt(threshold);
    let bound = if threshold_binding { threshold.clone() } else { derived.min(threshold) };
    let mut trail = inst.assumptions();
    trail.push(format!("assumed log|Lambda| < T, T in {threshold}"));
    if threshold_binding {
        trail.push("derived bound exceeds T; T itself is the certified bound".into());
    }
    Ok(Conclusion { bound, main_term, log_conversion, threshold: threshold.clone(), derived, threshold_binding, trail })
}

/// Independent re-check from scratch at twice the precision. Returns the
/// fresh report and conclusion; the caller compares bounds.
pub fn reverify(
    params: &LaurentParams,
    inst: &TwoLogInstance,
    a1: &HeightParam,
    a2: &HeightParam,
    threshold: &IntervalReal,
    p: Precision,
) -> Result<(VerificationReport, Conclusion), EngineError> {
    let q = p.doubled();
    let rep = verify_once(params, inst, a1, a2, q)?;
    let t = threshold.round_to(q);
    let c = conclude_bound(params, inst, &rep, &t, q)?;
    Ok((rep, c))
}
