//! Instance-specific grid search over `(ρ, μ, L, R1)`.
//!
//! For each candidate the remaining parameters follow the fixed recipe
//! (`k` re-solved, `K = 1 + ⌊kLa1a2⌋`, `S1 = ⌈L/R1⌉`, `R2`, `S2`), every
//! hypothesis is certified by the engine, and the best certified bound wins.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use indexmap::IndexMap;
use rayon::prelude::*;
use rug::{Integer, Rational};
use thiserror::Error;

use crate::certificate::{BoundCertificate, BoundPath, CheckEntry, MetaValue};
use crate::laurent::{
    self, Conclusion, DegreeSource, EngineError, HeightParam, LaurentParams, TwoLogInstance, VerificationReport,
};
use crate::numerics::{IntervalReal, Precision, Status};
use crate::theorem2::{dec, derive_state, h_from_bprime, PipelineError};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub rho_grid: Vec<Rational>,
    pub mu_grid: Vec<Rational>,
    pub l_range: RangeInclusive<u64>,
    pub r1_range: RangeInclusive<u64>,
    pub max_candidates: usize,
    pub precision: Precision,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), OptimizerError> {
        let bad = |s: &str| Err(OptimizerError::InvalidConfig(s.into()));
        if self.rho_grid.is_empty() || self.mu_grid.is_empty() {
            return bad("rho and mu grids must be nonempty");
        }
        if self.l_range.is_empty() || self.r1_range.is_empty() {
            return bad("L and R1 ranges must be nonempty");
        }
        if *self.l_range.start() == 0 || *self.r1_range.start() == 0 {
            return bad("L and R1 must be positive");
        }
        if self.max_candidates == 0 {
            return bad("max_candidates must be at least 1");
        }
        if self.rho_grid.iter().any(|r| *r <= 1) {
            return bad("every rho must exceed 1");
        }
        let third = Rational::from((1, 3));
        if self.mu_grid.iter().any(|m| *m < third || *m > 1) {
            return bad("every mu must lie in [1/3, 1]");
        }
        Ok(())
    }

    /// A grid around the fixed choice `ρ = 18.1`, `μ = 0.59`, `R1 = 4` with
    /// `L` within `spread` of `center`.
    pub fn around(center: u64, spread: u64, precision: Precision) -> Self {
        SearchConfig {
            rho_grid: ["12", "14", "16", "18.1", "20", "24"].iter().map(|s| dec(s)).collect(),
            mu_grid: ["0.5", "0.55", "0.59", "0.65", "0.7"].iter().map(|s| dec(s)).collect(),
            l_range: center.saturating_sub(spread).max(1)..=center + spread,
            r1_range: 3..=6,
            max_candidates: 5000,
            precision,
        }
    }

    fn candidates(&self) -> Vec<(Rational, Rational, u64, u64)> {
        let mut out = Vec::new();
        'outer: for rho in &self.rho_grid {
            for mu in &self.mu_grid {
                for l in self.l_range.clone() {
                    for r1 in self.r1_range.clone() {
                        if out.len() >= self.max_candidates {
                            break 'outer;
                        }
                        out.push((rho.clone(), mu.clone(), l, r1));
                    }
                }
            }
        }
        out
    }
}

/// The closest miss of a candidate that did not verify.
#[derive(Clone, Debug)]
pub struct FailedCandidate {
    pub params: String,
    pub condition: String,
    pub status: Status,
    pub margin: Option<IntervalReal>,
}

#[derive(Debug, Clone, Error)]
pub enum OptimizerError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("no certified candidate among {tried} tried")]
    NoCandidate { tried: usize, best_failing: Vec<FailedCandidate> },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Height parameters and the recipe inputs `(a1, a2, h)` at `ρ`.
fn heights(
    inst: &TwoLogInstance,
    rho: &Rational,
    p: Precision,
) -> Result<(HeightParam, HeightParam, IntervalReal, IntervalReal, IntervalReal), OptimizerError> {
    let (ha1, ha2) = match inst.d_source {
        DegreeSource::ImaginaryUnitShape => {
            let half = Rational::from((1, 2));
            (
                HeightParam::Structured { pi_coeff: half.clone(), with_height: false, extra: Rational::new() },
                HeightParam::Structured { pi_coeff: half, with_height: true, extra: Rational::new() },
            )
        }
        DegreeSource::Declared => (tight_height(&inst.alpha1, inst, rho, p)?, tight_height(&inst.alpha2, inst, rho, p)?),
    };
    let a1 = ha1.value(rho, &inst.d, &inst.alpha1, p)?;
    let a2 = ha2.value(rho, &inst.d, &inst.alpha2, p)?;
    let bprime = IntervalReal::from_integer(&inst.b1, p).div(&a2).map_err(EngineError::from)?
        + IntervalReal::from_integer(&inst.b2, p).div(&a1).map_err(EngineError::from)?;
    let (h, _) = h_from_bprime(&bprime, &inst.d, p)?;
    Ok((ha1, ha2, a1, a2, h))
}

/// Smallest admissible `a = ρ|log α| − log|α| + 2D h(α)`, padded upward so
/// that re-evaluation at higher precision still certifies the condition.
fn tight_height(
    alpha: &crate::algebraic::AlgebraicNumber,
    inst: &TwoLogInstance,
    rho: &Rational,
    p: Precision,
) -> Result<HeightParam, OptimizerError> {
    let log_abs = alpha.log_abs(p).map_err(EngineError::from)?;
    let arg = alpha.principal_argument(p).map_err(EngineError::from)?;
    let abs_log = (log_abs.sqr() + arg.sqr()).sqrt().map_err(EngineError::from)?;
    let h = alpha.absolute_log_height(p).map_err(EngineError::from)?;
    let v = IntervalReal::from_rational(rho, p) * abs_log - &log_abs + IntervalReal::from_rational(&inst.d, p) * 2 * h;
    let hi = rug::Float::with_val(p.bits(), v.hi());
    let pad = Rational::from((1, Integer::from(1) << (p.bits() / 2)));
    let top = hi.to_rational().expect("finite") * (Rational::from(1) + pad);
    Ok(HeightParam::Value(IntervalReal::from_rational(&top, p)))
}

struct Evaluated {
    params: LaurentParams,
    report: VerificationReport,
    conclusion: Option<Conclusion>,
    a2: IntervalReal,
    h: IntervalReal,
    threshold: IntervalReal,
}

/// `T` near the fixed point of `T = B(T)`, as a point.
fn choose_threshold(params: &LaurentParams, inst: &TwoLogInstance, p: Precision) -> Result<IntervalReal, EngineError> {
    let kl = IntervalReal::from_integer(&Integer::from(params.n()), p);
    let main = params.mu(p) * kl * params.rho(p).ln()?;
    let mut t = -main.clone();
    for _ in 0..3 {
        let b = -(&main + laurent::log_conversion_factor(params, inst, &t, p)?);
        t = IntervalReal::point(b.lo().clone());
    }
    Ok(t)
}

fn evaluate(inst: &TwoLogInstance, cand: &(Rational, Rational, u64, u64), p: Precision) -> Result<Evaluated, String> {
    let (rho, mu, l, r1) = cand;
    let mut last = String::new();
    for q in p.escalation() {
        let (ha1, ha2, a1, a2, h) = heights(inst, rho, q).map_err(|e| e.to_string())?;
        let state = match derive_state(&h, &a1, &a2, rho, mu, Some(*l), *r1, q) {
            Ok(s) => s,
            Err(PipelineError::Indeterminate(s)) => {
                last = s;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        let params = state.params();
        params.validate().map_err(|e| e.to_string())?;
        let report = laurent::verify(&params, inst, &ha1, &ha2, q).map_err(|e| e.to_string())?;
        let rq = report.precision;
        let threshold = choose_threshold(&params, inst, rq).map_err(|e| e.to_string())?;
        let conclusion = if report.all_verified() {
            Some(laurent::conclude_bound(&params, inst, &report, &threshold, rq).map_err(|e| e.to_string())?)
        } else {
            None
        };
        return Ok(Evaluated { params, report, conclusion, a2, h, threshold });
    }
    Err(last)
}

fn tie_key(p: &LaurentParams) -> (u64, u64, Rational, Rational) {
    (p.k, p.l, p.rho.clone(), p.mu.clone())
}

/// Best certified bound over the grid; deterministic for a fixed config.
pub fn optimize(inst: &TwoLogInstance, cfg: &SearchConfig) -> Result<BoundCertificate, OptimizerError> {
    cfg.validate()?;
    let p = cfg.precision;
    let cands = cfg.candidates();
    let results: Vec<(usize, Result<Evaluated, String>)> =
        cands.par_iter().enumerate().map(|(i, c)| (i, evaluate(inst, c, p))).collect();

    let mut best: Option<&Evaluated> = None;
    let mut failing = Vec::new();
    for (i, r) in &results {
        match r {
            Ok(ev) if ev.conclusion.is_some() => {
                let better = match best {
                    None => true,
                    Some(b) => {
                        let (x, y) = (ev.conclusion.as_ref().unwrap().bound.lo(), b.conclusion.as_ref().unwrap().bound.lo());
                        match x.partial_cmp(y) {
                            Some(Ordering::Greater) => true,
                            Some(Ordering::Equal) => tie_key(&ev.params) < tie_key(&b.params),
                            _ => false,
                        }
                    }
                };
                if better {
                    best = Some(ev);
                }
            }
            Ok(ev) => {
                let worst = ev
                    .report
                    .conditions
                    .iter()
                    .filter(|c| !c.status.is_verified())
                    .min_by(|a, b| a.margin.lo().partial_cmp(b.margin.lo()).unwrap_or(Ordering::Equal))
                    .expect("some condition is unverified");
                failing.push(FailedCandidate {
                    params: ev.params.to_string(),
                    condition: worst.name.to_string(),
                    status: worst.status,
                    margin: Some(worst.margin.clone()),
                });
            }
            Err(e) => {
                let (rho, mu, l, r1) = &cands[*i];
                failing.push(FailedCandidate {
                    params: format!("rho={rho} mu={mu} L={l} R1={r1}"),
                    condition: e.clone(),
                    status: Status::Failed,
                    margin: None,
                });
            }
        }
    }
    let Some(ev) = best else {
        failing.sort_by(|a, b| {
            let key = |f: &FailedCandidate| f.margin.as_ref().map(|m| m.hi().to_f64()).unwrap_or(f64::NEG_INFINITY);
            key(b).partial_cmp(&key(a)).unwrap_or(Ordering::Equal)
        });
        failing.truncate(5);
        return Err(OptimizerError::NoCandidate { tried: cands.len(), best_failing: failing });
    };
    certify(inst, cfg, ev)
}

fn certify(inst: &TwoLogInstance, cfg: &SearchConfig, ev: &Evaluated) -> Result<BoundCertificate, OptimizerError> {
    let concl = ev.conclusion.as_ref().expect("certified candidate");
    let (ha1, ha2, ..) = heights(inst, &ev.params.rho, ev.report.precision)?;
    let (rep2, concl2) = laurent::reverify(&ev.params, inst, &ha1, &ha2, &ev.threshold, ev.report.precision)?;
    let agree = concl2.bound.intersect(&concl.bound).is_some();
    let re_status = if rep2.all_verified() && agree { Status::Verified } else { rep2.overall().and(Status::Failed) };
    let mut checks = IndexMap::new();
    for c in &ev.report.conditions {
        checks.insert(c.name.to_string(), CheckEntry::new(c.status, c.margin.clone(), c.detail.clone()));
    }
    checks.insert(
        "reverify_doubled_precision".into(),
        CheckEntry::new(
            re_status,
            rep2.get(laurent::COND_MAIN).map(|c| c.margin.clone()).unwrap_or_else(|| IntervalReal::zero(cfg.precision)),
            format!("all conditions re-checked at {}", rep2.precision),
        ),
    );
    let mut metadata = IndexMap::new();
    metadata.insert("threshold".into(), MetaValue::Interval(ev.threshold.clone()));
    metadata.insert("main_term".into(), MetaValue::Interval(concl.main_term.clone()));
    metadata.insert("log_conversion".into(), MetaValue::Interval(concl.log_conversion.clone()));
    metadata.insert("reverified_bound".into(), MetaValue::Interval(concl2.bound.clone()));
    metadata.insert(
        "bound_over_ah2".into(),
        MetaValue::Interval(concl.bound.div(&(&ev.a2 * ev.h.sqr())).map_err(EngineError::from)?),
    );
    let mut trail = concl.trail.clone();
    trail.push(format!(
        "grid: {} rho values, {} mu values, L in {:?}, R1 in {:?}, at most {} candidates",
        cfg.rho_grid.len(),
        cfg.mu_grid.len(),
        cfg.l_range,
        cfg.r1_range,
        cfg.max_candidates
    ));
    let status = checks.values().fold(Status::Verified, |s, c| s.and(c.status));
    let cert = BoundCertificate {
        statement: "log|b2 log(alpha2) - b1 log(alpha1)| > bound".into(),
        status,
        bound: status.is_verified().then(|| concl.bound.clone()),
        a: ev.a2.clone(),
        h: ev.h.clone(),
        d: inst.d.clone(),
        b1: inst.b1.clone(),
        b2: inst.b2.clone(),
        gcd: Integer::from(inst.b1.gcd_ref(&inst.b2)),
        path: BoundPath::Optimizer,
        params: Some(ev.params.clone()),
        checks,
        replay: IndexMap::new(),
        metadata,
        assumption_trail: trail,
        precision: ev.report.precision,
    };
    if cert.is_certified() {
        Ok(cert)
    } else {
        Err(PipelineError::NotCertified(Box::new(cert)).into())
    }
}
