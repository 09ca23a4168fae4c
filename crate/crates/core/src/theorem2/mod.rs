//! The specialisation `Λ1 = b2 log α − b1 πi/2` for unit-modulus `α` that is
//! not a root of unity, certifying `log|Λ1| > −2.7704 a h²`.
//!
//! `a = 9.05π + 2D h(α)`, `b' = b1/a + b2/(9.05π)` and
//! `h = max{17, D, D(log b' + 2.96) + 0.01}`. When `b' <= 4h²` the
//! elementary Liouville estimate suffices; otherwise the interpolation
//! engine is run with the fixed choice `ρ = 18.1`, `μ = 0.59`.

mod lmn;
mod replay;

use indexmap::IndexMap;
use rug::{Integer, Rational};
use thiserror::Error;

pub use lmn::{compare_lmn, LmnComparison};
pub use replay::{paper_suite, replay_escalating, replay_inequalities, ReplayCheck, ReplayContext, ReplayReport, SuitePoint};

use crate::algebraic::{AlgebraicError, AlgebraicNumber};
use crate::certificate::{BoundCertificate, BoundPath, CheckEntry, MetaValue};
use crate::laurent::{self, EngineError, HeightParam, LaurentParams, TwoLogInstance};
use crate::numerics::{decimal_to_rational, IntervalReal, NumericsError, Precision, Status};

pub const RHO: &str = "18.1";
pub const MU: &str = "0.59";
pub const DELTA0: &str = "0.01";
pub const DELTA1: &str = "0.044";
pub const A_PI_COEFF: &str = "9.05";
pub const H_SLOPE: &str = "2.96";
pub const H_SHIFT: &str = "0.01";
pub const H_FLOOR: i64 = 17;
pub const THRESHOLD_COEFF: &str = "2.75";
pub const MAIN_COEFF: &str = "2.7701";
pub const SLACK_COEFF: &str = "0.0003";
pub const FINAL_COEFF: &str = "2.7704";

pub fn dec(s: &str) -> Rational {
    decimal_to_rational(s).expect("valid decimal literal")
}

pub fn dec_i(s: &str, p: Precision) -> IntervalReal {
    IntervalReal::from_rational(&dec(s), p)
}

#[derive(Debug, Clone, Error)]
pub enum PipelineError {
    /// A precondition of the theorem does not hold.
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    /// The pipeline ran but could not certify a bound; the report is kept.
    #[error("no certified bound ({})", .0.unverified().join(", "))]
    NotCertified(Box<BoundCertificate>),
    #[error(transparent)]
    Algebraic(AlgebraicError),
    #[error(transparent)]
    Engine(EngineError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl From<AlgebraicError> for PipelineError {
    fn from(e: AlgebraicError) -> Self {
        match e {
            AlgebraicError::Indeterminate(s) => PipelineError::Indeterminate(s),
            e => PipelineError::Algebraic(e),
        }
    }
}

impl From<EngineError> for PipelineError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Algebraic(a) => a.into(),
            EngineError::InvalidInstance(s) => PipelineError::Rejected(s),
            e => PipelineError::Engine(e),
        }
    }
}

/// Which term attains the maximum defining `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HBranch {
    Floor17,
    Degree,
    LogBprime,
}

#[derive(Clone, Debug)]
pub struct Theorem2Inputs {
    pub alpha: AlgebraicNumber,
    pub b1: Integer,
    pub b2: Integer,
    pub bprime: IntervalReal,
    pub d: Rational,
    pub a: IntervalReal,
    pub h: IntervalReal,
    pub h_alpha: IntervalReal,
    /// `None` if the enclosures cannot tell which term is largest.
    pub h_branch: Option<HBranch>,
    pub precision: Precision,
}

/// `a1 = ρπ/2 = 9.05π`.
pub fn a1_value(p: Precision) -> IntervalReal {
    dec_i(A_PI_COEFF, p) * IntervalReal::pi(p)
}

/// Unit modulus, not a root of unity, even degree.
pub fn check_preconditions(alpha: &AlgebraicNumber) -> Result<(), PipelineError> {
    if !alpha.has_unit_modulus()? {
        return Err(PipelineError::Rejected("alpha is not unit-modulus".into()));
    }
    if alpha.is_root_of_unity() {
        return Err(PipelineError::Rejected("alpha is a root of unity".into()));
    }
    if !alpha.degree().is_multiple_of(2) {
        return Err(PipelineError::Rejected(format!("minimal polynomial has odd degree {}", alpha.degree())));
    }
    Ok(())
}

fn check_positive(b1: &Integer, b2: &Integer) -> Result<(), PipelineError> {
    if *b1 < 1 || *b2 < 1 {
        return Err(PipelineError::Rejected("b1 and b2 must be positive integers".into()));
    }
    Ok(())
}

pub fn gcd_reduce(b1: &Integer, b2: &Integer) -> (Integer, Integer) {
    let g = Integer::from(b1.gcd_ref(b2));
    if g <= 1 {
        return (b1.clone(), b2.clone());
    }
    (Integer::from(b1.div_exact_ref(&g)), Integer::from(b2.div_exact_ref(&g)))
}

/// `h = max{17, D, D(log b' + 2.96) + 0.01}` and the attaining branch.
pub fn h_from_bprime(
    bprime: &IntervalReal,
    d: &Rational,
    p: Precision,
) -> Result<(IntervalReal, Option<HBranch>), PipelineError> {
    let di = IntervalReal::from_rational(d, p);
    let third = &di * (bprime.ln()? + dec_i(H_SLOPE, p)) + dec_i(H_SHIFT, p);
    let cands = [(HBranch::Floor17, IntervalReal::from_int(H_FLOOR, p)), (HBranch::Degree, di), (HBranch::LogBprime, third)];
    let h = cands[0].1.max(&cands[1].1).max(&cands[2].1);
    let branch = cands
        .iter()
        .enumerate()
        .find(|(i, (_, v))| cands.iter().enumerate().all(|(j, (_, w))| j == *i || v.lo() >= w.hi()))
        .map(|(_, (b, _))| *b);
    Ok((h, branch))
}

pub fn compute_inputs(
    alpha: &AlgebraicNumber,
    b1: &Integer,
    b2: &Integer,
    p: Precision,
) -> Result<Theorem2Inputs, PipelineError> {
    check_positive(b1, b2)?;
    check_preconditions(alpha)?;
    let d = Rational::from(alpha.degree() as u64 / 2);
    let h_alpha = alpha.absolute_log_height(p)?;
    let a1 = a1_value(p);
    let a = &a1 + IntervalReal::from_rational(&d, p) * 2 * &h_alpha;
    let bprime = IntervalReal::from_integer(b1, p).div(&a)? + IntervalReal::from_integer(b2, p).div(&a1)?;
    let (h, h_branch) = h_from_bprime(&bprime, &d, p)?;
    Ok(Theorem2Inputs { alpha: alpha.clone(), b1: b1.clone(), b2: b2.clone(), bprime, d, a, h, h_alpha, h_branch, precision: p })
}

/// Section-2 parameter choice, generalised to any `ρ`, `μ`, `R1` and an
/// optional override for `L`.
#[derive(Clone, Debug)]
pub struct PipelineState {
    pub delta0: IntervalReal,
    pub delta1: IntervalReal,
    pub mu: IntervalReal,
    pub rho: IntervalReal,
    pub mu_exact: Rational,
    pub rho_exact: Rational,
    pub a1: IntervalReal,
    pub a2: IntervalReal,
    pub sigma: IntervalReal,
    pub lambda: IntervalReal,
    pub big_h: IntervalReal,
    pub l0: IntervalReal,
    pub l: u64,
    pub k: IntervalReal,
    pub sqrt_k: IntervalReal,
    pub big_k: u64,
    pub r1: u64,
    pub s1: u64,
    pub r2: u64,
    pub s2: u64,
    pub lplus: IntervalReal,
    pub lminus: IntervalReal,
    /// `v2(L) k − v1(L) √k − v0(L)`.
    pub phi: IntervalReal,
    pub precision: Precision,
}

impl PipelineState {
    pub fn params(&self) -> LaurentParams {
        LaurentParams {
            k: self.big_k,
            l: self.l,
            r1: self.r1,
            r2: self.r2,
            s1: self.s1,
            s2: self.s2,
            rho: self.rho_exact.clone(),
            mu: self.mu_exact.clone(),
        }
    }

    /// `(v0, v1, v2)` at `x`.
    pub fn v(&self, x: &IntervalReal) -> Result<(IntervalReal, IntervalReal, IntervalReal), NumericsError> {
        let p = self.precision;
        let v0 = self.a1.recip()?.div_int(4)? + IntervalReal::from_int(4, p).div(&(&self.a2 * 3))? + x.div(&(&self.a1 * 12))?;
        let v1 = x.div_int(3)?;
        let v2 = &self.lambda * (x - &self.big_h);
        Ok((v0, v1, v2))
    }
}

/// `σ = (1 + 2μ − μ²)/2`.
pub fn sigma_exact(mu: &Rational) -> Rational {
    (Rational::from(1) + Rational::from(mu * 2u32) - Rational::from(mu * mu)) / 2u32
}

fn floor_u64(x: &IntervalReal, what: &str) -> Result<u64, PipelineError> {
    let f = x.floor_unique().ok_or_else(|| PipelineError::Indeterminate(format!("floor of {what} not determined")))?;
    f.to_u64().ok_or_else(|| PipelineError::Rejected(format!("{what} = {f} out of range")))
}

/// Derives `(H, L0, L, k, K, R1, S1, R2, S2)` from `h`, `a1`, `a2`.
#[allow(clippy::too_many_arguments)]
pub fn derive_state(
    h: &IntervalReal,
    a1: &IntervalReal,
    a2: &IntervalReal,
    rho: &Rational,
    mu: &Rational,
    l_override: Option<u64>,
    r1: u64,
    p: Precision,
) -> Result<PipelineState, PipelineError> {
    let sigma_q = sigma_exact(mu);
    let sigma = IntervalReal::from_rational(&sigma_q, p);
    let rho_i = IntervalReal::from_rational(rho, p);
    let lambda = &sigma * rho_i.ln()?;
    let big_h = h.div(&lambda)? + sigma.recip()?;
    let quarter = IntervalReal::from_rational(&Rational::from((1, 4)), p);
    let half = IntervalReal::from_rational(&Rational::from((1, 2)), p);
    let l0 = &big_h + (big_h.sqr() + &quarter).sqrt()?;
    let l = match l_override {
        Some(l) => l,
        None => floor_u64(&(&l0 + &half), "L0 + 1/2")?,
    };
    if l == 0 || r1 == 0 {
        return Err(PipelineError::Rejected("L and R1 must be positive".into()));
    }
    let li = IntervalReal::from_int(l as i64, p);
    let gap = &li - &big_h;
    match gap.positive_status() {
        Status::Verified => {}
        Status::Failed => return Err(PipelineError::Rejected(format!("L = {l} does not exceed H = {big_h}"))),
        Status::Indeterminate => return Err(PipelineError::Indeterminate("sign of L - H not determined".into())),
    }
    let v0 = a1.recip()?.div_int(4)? + IntervalReal::from_int(4, p).div(&(a2 * 3))? + li.div(&(a1 * 12))?;
    let v1 = li.div_int(3)?;
    let v2 = &lambda * &gap;
    let disc = (v1.sqr() + &v0 * &v2 * 4).sqrt()?;
    let sqrt_k = (&v1 + &disc).div(&(&v2 * 2))?;
    let k = sqrt_k.sqr();
    let phi = &v2 * &k - &v1 * &sqrt_k - &v0;
    let big_k = 1 + floor_u64(&(&k * &li * a1 * a2), "k L a1 a2")?;
    let s1 = l.div_ceil(r1);
    let km1l = IntervalReal::from_int(((big_k - 1) * l) as i64, p);
    let r2 = 1 + floor_u64(&(&km1l * a2).div(a1)?.sqrt()?, "sqrt((K-1) L a2/a1)")?;
    let s2 = 1 + floor_u64(&(&km1l * a1).div(a2)?.sqrt()?, "sqrt((K-1) L a1/a2)")?;
    Ok(PipelineState {
        delta0: dec_i(DELTA0, p),
        delta1: dec_i(DELTA1, p),
        mu: IntervalReal::from_rational(mu, p),
        rho: rho_i,
        mu_exact: mu.clone(),
        rho_exact: rho.clone(),
        a1: a1.clone(),
        a2: a2.clone(),
        sigma,
        lambda,
        lplus: &l0 + &half,
        lminus: &l0 - &half,
        big_h,
        l0,
        l,
        k,
        sqrt_k,
        big_k,
        r1,
        s1,
        r2,
        s2,
        phi,
        precision: p,
    })
}

pub fn build_parameters(inputs: &Theorem2Inputs, p: Precision) -> Result<PipelineState, PipelineError> {
    let h = inputs.h.round_to(p);
    let a2 = inputs.a.round_to(p);
    derive_state(&h, &a1_value(p), &a2, &dec(RHO), &dec(MU), None, 4, p)
}

/// The engine's height parameters: `a1 = ρπ/2`, `a2 = ρπ/2 + 2D h(α)`.
pub fn height_params() -> (HeightParam, HeightParam) {
    let half = Rational::from((1, 2));
    (
        HeightParam::Structured { pi_coeff: half.clone(), with_height: false, extra: Rational::new() },
        HeightParam::Structured { pi_coeff: half, with_height: true, extra: Rational::new() },
    )
}

fn coefficient_bound(coeff: &str, a: &IntervalReal, h: &IntervalReal) -> IntervalReal {
    let p = a.precision();
    -(dec_i(coeff, p) * a * h.sqr())
}

/// `−2.7704 a h²`.
pub fn final_bound(a: &IntervalReal, h: &IntervalReal) -> IntervalReal {
    coefficient_bound(FINAL_COEFF, a, h)
}

fn base_certificate(inputs: &Theorem2Inputs, gcd: &Integer, orig: (&Integer, &Integer), path: BoundPath) -> BoundCertificate {
    let mut metadata = IndexMap::new();
    metadata.insert("bprime".into(), MetaValue::Interval(inputs.bprime.clone()));
    metadata.insert("h_alpha".into(), MetaValue::Interval(inputs.h_alpha.clone()));
    let branch = match inputs.h_branch {
        Some(HBranch::Floor17) => "17",
        Some(HBranch::Degree) => "D",
        Some(HBranch::LogBprime) => "D(log b' + 2.96) + 0.01",
        None => "undetermined",
    };
    metadata.insert("h_branch".into(), MetaValue::Text(branch.into()));
    metadata.insert("minpoly".into(), MetaValue::Text(inputs.alpha.minpoly().to_string()));
    metadata.insert("root".into(), MetaValue::Text(inputs.alpha.hint_string()));
    let mut trail = Vec::new();
    if *gcd > 1 {
        trail.push(format!(
            "gcd(b1, b2) = {gcd}; the bound for ({}, {}) is certified for the reduced pair ({}, {}) and transfers verbatim",
            orig.0, orig.1, inputs.b1, inputs.b2
        ));
    }
    trail.push(format!("D = deg(minpoly)/2 = {} (presumes i lies in Q(alpha))", inputs.d));
    if inputs.alpha.irreducibility() == crate::algebraic::Irreducibility::Trusted {
        trail.push("irreducibility of the minimal polynomial taken on trust".into());
    }
    BoundCertificate {
        statement: "log|b2 log(alpha) - b1 pi i/2| > -2.7704 a h^2".into(),
        status: Status::Indeterminate,
        bound: None,
        a: inputs.a.clone(),
        h: inputs.h.clone(),
        d: inputs.d.clone(),
        b1: orig.0.clone(),
        b2: orig.1.clone(),
        gcd: gcd.clone(),
        path,
        params: None,
        checks: IndexMap::new(),
        replay: IndexMap::new(),
        metadata,
        assumption_trail: trail,
        precision: inputs.precision,
    }
}

/// Elementary bound for `b' <= 4h²`: `log|Λ1| >= −b' D h(α) − D log 2`,
/// reported as the uniform `−2.7704 a h²`.
pub fn liouville_fallback(inputs: &Theorem2Inputs, p: Precision) -> Result<BoundCertificate, PipelineError> {
    let g = Integer::from(1);
    liouville_inner(inputs, &g, (&inputs.b1, &inputs.b2), p)
}

fn liouville_inner(
    inputs: &Theorem2Inputs,
    gcd: &Integer,
    orig: (&Integer, &Integer),
    p: Precision,
) -> Result<BoundCertificate, PipelineError> {
    let a = inputs.a.round_to(p);
    let h = inputs.h.round_to(p);
    let bprime = inputs.bprime.round_to(p);
    let four_h2 = h.sqr() * 4;
    match bprime.le_status(&four_h2) {
        Status::Verified => {}
        Status::Failed => return Err(PipelineError::Rejected("b' > 4h^2: the Liouville path does not apply".into())),
        Status::Indeterminate => return Err(PipelineError::Indeterminate("b' versus 4h^2 not decided".into())),
    }
    let di = IntervalReal::from_rational(&inputs.d, p);
    let d_log2 = &di * IntervalReal::from_int(2, p).ln()?;
    let intermediate = -(&bprime * &di * inputs.h_alpha.round_to(p)) - &d_log2;
    let two_ah2 = -(&a * h.sqr() * 2) - &d_log2;
    let target = final_bound(&a, &h);
    let mut cert = base_certificate(inputs, gcd, orig, BoundPath::Liouville);
    let c1 = &intermediate - &two_ah2;
    let c2 = &two_ah2 - &target;
    cert.checks.insert("liouville_bprime_le_4h2".into(), CheckEntry::new(Status::Verified, &four_h2 - &bprime, "b' <= 4h^2"));
    cert.checks.insert(
        "liouville_vs_2ah2".into(),
        CheckEntry::new(c1.ge_status(&IntervalReal::zero(p)), c1, "-b' D h(alpha) - D log 2 >= -2ah^2 - D log 2"),
    );
    cert.checks.insert("liouville_vs_2.7704".into(), CheckEntry::new(c2.positive_status(), c2, "-2ah^2 - D log 2 > -2.7704ah^2"));
    cert.metadata.insert("liouville_intermediate".into(), MetaValue::Interval(intermediate));
    cert.assumption_trail.push("Liouville path: b' <= 4h^2".into());
    cert.precision = p;
    let status = cert.checks.values().fold(Status::Verified, |s, c| s.and(c.status));
    cert.status = status;
    if status.is_verified() {
        cert.bound = Some(target);
        Ok(cert)
    } else {
        Err(PipelineError::NotCertified(Box::new(cert)))
    }
}

fn with_precision<T>(p: Precision, mut f: impl FnMut(Precision) -> Result<T, PipelineError>) -> Result<T, PipelineError> {
    let mut last = None;
    for q in p.escalation() {
        match f(q) {
            Err(PipelineError::Indeterminate(s)) => last = Some(s),
            r => return r,
        }
    }
    Err(PipelineError::Indeterminate(last.unwrap_or_default()))
}

/// Certifies `log|Λ1| > −2.7704 a h²` for one instance.
pub fn theorem2_bound(
    alpha: &AlgebraicNumber,
    b1: &Integer,
    b2: &Integer,
    p: Precision,
) -> Result<BoundCertificate, PipelineError> {
    check_positive(b1, b2)?;
    check_preconditions(alpha)?;
    let g = Integer::from(b1.gcd_ref(b2));
    let (r1, r2) = gcd_reduce(b1, b2);
    let orig = (b1, b2);
    let (inputs, main) = with_precision(p, |q| {
        let inputs = compute_inputs(alpha, &r1, &r2, q)?;
        let four_h2 = inputs.h.sqr() * 4;
        if inputs.bprime.le_status(&four_h2).is_verified() {
            Ok((inputs, false))
        } else if inputs.bprime.certainly_gt(&four_h2) {
            Ok((inputs, true))
        } else {
            Err(PipelineError::Indeterminate("b' versus 4h^2 not decided".into()))
        }
    })?;
    if !main {
        return liouville_inner(&inputs, &g, orig, inputs.precision);
    }
    main_path(&inputs, &g, orig)
}

fn main_path(inputs: &Theorem2Inputs, gcd: &Integer, orig: (&Integer, &Integer)) -> Result<BoundCertificate, PipelineError> {
    let p0 = inputs.precision;
    let (state, inputs) = with_precision(p0, |q| {
        let inp = if q == p0 { inputs.clone() } else { compute_inputs(&inputs.alpha, &inputs.b1, &inputs.b2, q)? };
        Ok((build_parameters(&inp, q)?, inp))
    })?;
    let p = state.precision;
    let params = state.params();
    let inst = TwoLogInstance::imaginary_unit_shape(inputs.alpha.clone(), inputs.b1.clone(), inputs.b2.clone())?;
    let (ha1, ha2) = height_params();
    let report = laurent::verify(&params, &inst, &ha1, &ha2, p)?;
    let q = report.precision;
    let a = inputs.a.round_to(q);
    let h = inputs.h.round_to(q);
    let target = final_bound(&a, &h);
    let threshold = coefficient_bound(THRESHOLD_COEFF, &a, &h);

    let mut cert = base_certificate(&inputs, gcd, orig, BoundPath::Main);
    cert.params = Some(params.clone());
    cert.precision = q;
    cert.add_engine_report(&report);
    cert.note_all(inst.assumptions());
    cert.assumption_trail.push("L = floor(L0 + 1/2), the nearest integer to L0".into());
    let ctx = ReplayContext::from_inputs(&inputs);
    let replay = replay::replay_escalating(
        &ctx,
        |q| {
            let inp = compute_inputs(&inputs.alpha, &inputs.b1, &inputs.b2, q)?;
            Ok((build_parameters(&inp, q)?, ReplayContext::from_inputs(&inp)))
        },
        &state,
        p,
    );
    cert.metadata.insert("phi_residual".into(), MetaValue::Interval(state.phi.clone()));
    for c in &replay.checks {
        cert.replay.insert(c.name.clone(), c.entry.clone());
    }
    if report.all_verified() {
        let concl = laurent::conclude_bound(&params, &inst, &report, &threshold, q)?;
        let margin = &concl.bound - &target;
        cert.checks.insert(
            "engine_bound_above_2.7704".into(),
            CheckEntry::new(margin.positive_status(), margin, "min(T, B(T)) > -2.7704ah^2 with T = -2.75ah^2"),
        );
        cert.metadata.insert("engine_bound".into(), MetaValue::Interval(concl.bound.clone()));
        cert.metadata.insert("engine_main_term".into(), MetaValue::Interval(concl.main_term.clone()));
        cert.metadata.insert("engine_log_conversion".into(), MetaValue::Interval(concl.log_conversion.clone()));
        cert.note_all(concl.trail.iter().cloned());
    }
    let status = cert.checks.values().fold(Status::Verified, |s, c| s.and(c.status));
    cert.status = if report.all_verified() { status } else { report.overall() };
    if cert.status.is_verified() {
        cert.bound = Some(target);
        Ok(cert)
    } else {
        Err(PipelineError::NotCertified(Box::new(cert)))
    }
}

/// `log|arg(α^n)| > −2.7704 a h²` through `b1 = round(2n|arg α|/π)`,
/// `b2 = n`.
pub fn arg_power_bound(alpha: &AlgebraicNumber, n: &Integer, p: Precision) -> Result<BoundCertificate, PipelineError> {
    if *n < 1 {
        return Err(PipelineError::Rejected("n must be a positive integer".into()));
    }
    check_preconditions(alpha)?;
    let (arg, b1) = with_precision(p, |q| {
        let arg = alpha.principal_argument(q)?;
        let t = (arg.abs() * IntervalReal::from_integer(n, q) * 2).div(&IntervalReal::pi(q))?;
        let b1 = t.round_even_unique().ok_or_else(|| PipelineError::Indeterminate("rounding of 2n|arg|/pi".into()))?;
        if arg.contains_zero() {
            return Err(PipelineError::Indeterminate("sign of arg alpha".into()));
        }
        Ok((arg, b1))
    })?;
    if b1 == 0 {
        return Err(PipelineError::Rejected(format!(
            "b1 = round(2n|arg alpha|/pi) = 0 for n = {n}; the theorem requires a positive b1"
        )));
    }
    let conj = arg.hi() < &0;
    let used = if conj { alpha.conjugate() } else { alpha.clone() };
    let mut cert = theorem2_bound(&used, &b1, n, p).map_err(|e| match e {
        PipelineError::NotCertified(mut c) => {
            restate_arg_power(&mut c, n, &arg, conj);
            PipelineError::NotCertified(c)
        }
        e => e,
    })?;
    restate_arg_power(&mut cert, n, &arg, conj);
    Ok(cert)
}

fn restate_arg_power(cert: &mut BoundCertificate, n: &Integer, arg: &IntervalReal, conj: bool) {
    cert.statement = "log|arg(alpha^n)| > -2.7704 a h^2".into();
    cert.metadata.insert("n".into(), MetaValue::Text(n.to_string()));
    cert.metadata.insert("arg_alpha".into(), MetaValue::Interval(arg.clone()));
    cert.assumption_trail.push(format!(
        "b1 = round(2n|arg alpha|/pi) = {} (ties to even), b2 = n; |arg(alpha^n)| >= |n|arg alpha| - b1 pi/2| = |Lambda_1|",
        cert.b1
    ));
    if conj {
        cert.assumption_trail
            .push("arg alpha < 0: the bound is certified for conj(alpha), which has the same |arg(alpha^n)|".into());
    }
}
