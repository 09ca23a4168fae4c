//! Re-evaluation of every stated inequality of the constant chain, each with
//! its own certified margin.
//!
//! Margins are `rhs − lhs` for a claim `lhs < rhs`, so "verified" means the
//! whole margin enclosure is positive. A failed check is flagged as a chain
//! discrepancy; the direct engine verification is unaffected by it.

use rug::{Integer, Rational};

use super::{
    dec_i, derive_state, h_from_bprime, HBranch, PipelineError, PipelineState, Theorem2Inputs, A_PI_COEFF, DELTA0, FINAL_COEFF,
    MAIN_COEFF, MU, RHO, SLACK_COEFF, THRESHOLD_COEFF,
};
use crate::certificate::CheckEntry;
use crate::numerics::{epsilon_of_n, log_superfactorial, IntervalReal, NumericsError, Precision, Status};

/// Instance data the chain refers to. `b1`, `b2` are enclosures so that
/// synthetic grid points need not have integral coefficients.
#[derive(Clone, Debug)]
pub struct ReplayContext {
    pub d: Rational,
    pub a: IntervalReal,
    pub h: IntervalReal,
    pub bprime: IntervalReal,
    pub b1: IntervalReal,
    pub b2: IntervalReal,
    pub h_branch: Option<HBranch>,
}

impl ReplayContext {
    pub fn from_inputs(inp: &Theorem2Inputs) -> Self {
        let p = inp.precision;
        ReplayContext {
            d: inp.d.clone(),
            a: inp.a.clone(),
            h: inp.h.clone(),
            bprime: inp.bprime.clone(),
            b1: IntervalReal::from_integer(&inp.b1, p),
            b2: IntervalReal::from_integer(&inp.b2, p),
            h_branch: inp.h_branch,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReplayCheck {
    pub name: String,
    pub entry: CheckEntry,
}

#[derive(Clone, Debug)]
pub struct ReplayReport {
    pub checks: Vec<ReplayCheck>,
    pub precision: Precision,
}

impl ReplayReport {
    pub fn all_verified(&self) -> bool {
        self.checks.iter().all(|c| c.entry.status.is_verified())
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.entry)
    }

    pub fn not_verified(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.entry.status.is_verified()).map(|c| c.name.as_str()).collect()
    }
}

type Check = Result<CheckEntry, NumericsError>;

fn positive(margin: IntervalReal, detail: String) -> CheckEntry {
    CheckEntry::new(margin.positive_status(), margin, detail)
}

fn f1(x: &IntervalReal) -> Result<IntervalReal, NumericsError> {
    let xm1 = x - 1;
    let lr = x.div(&xm1)?.ln()?;
    Ok(lr.div_int(2)? + x.ln()?.div(&(x * &xm1 * 6))? + lr.div(&xm1)?)
}

/// `log M(T)`, with `M(T) = max{LS e^{LS e^T/(2b2)}/(2b2), LR e^{LR e^T/(2b1)}/(2b1)}`.
fn log_conversion(
    l: u64,
    r: u64,
    s: u64,
    b1: &IntervalReal,
    b2: &IntervalReal,
    t: &IntervalReal,
) -> Result<IntervalReal, NumericsError> {
    let p = t.precision();
    let e_t = t.exp();
    let branch = |size: u64, b: &IntervalReal| -> Result<IntervalReal, NumericsError> {
        let ls = IntervalReal::from_int((l * size) as i64, p);
        let two_b = b * 2;
        Ok(ls.ln()? - two_b.ln()? + (&ls * &e_t).div(&two_b)?)
    };
    Ok(branch(s, b2)?.max(&branch(r, b1)?))
}

struct Chain<'a> {
    st: &'a PipelineState,
    ctx: &'a ReplayContext,
    p: Precision,
    li: IntervalReal,
    ki: IntervalReal,
    big_r: u64,
    big_s: u64,
    n: u64,
    ah2: IntervalReal,
    d: IntervalReal,
}

impl Chain<'_> {
    fn c(&self, s: &str) -> IntervalReal {
        dec_i(s, self.p)
    }

    fn int(&self, v: u64) -> IntervalReal {
        IntervalReal::from_integer(&Integer::from(v), self.p)
    }

    fn l_quadratic_roots(&self) -> Check {
        let st = self.st;
        let two_l0 = &st.l0 * 2;
        let lhs = self.li.sqr().div(&(&self.li - &st.big_h))?;
        let ident = |x: &IntervalReal| -> Result<IntervalReal, NumericsError> { Ok(x.sqr().div(&(x - &st.big_h))? - &two_l0) };
        let rp = ident(&st.lplus)?;
        let rm = ident(&st.lminus)?;
        let mut e = positive(&two_l0 - &lhs, format!("L^2/(L-H) in {lhs}, 2L0 in {two_l0}"));
        if !rp.contains_zero() || !rm.contains_zero() {
            e.status = Status::Failed;
            e.detail.push_str("; identity (L±)^2/(L±-H) = 2L0 violated");
        }
        Ok(e)
    }

    fn sqrtk_lower(&self) -> Check {
        let st = self.st;
        Ok(positive(&st.sqrt_k - self.c("0.2432"), format!("sqrt(k) in {}", st.sqrt_k)))
    }

    /// `√k > v1/v2 = L/(3λ(L−H)) > L+/(3λ(L+−H)) > 0.2432`.
    fn sqrtk_lower_chain(&self) -> Check {
        let st = self.st;
        let (_, v1, v2) = st.v(&self.li)?;
        let q = v1.div(&v2)?;
        // v1/v2 equals L/(3λ(L − H)) identically, so that link is not compared
        let at = |x: &IntervalReal| x.div(&(&st.lambda * (x - &st.big_h) * 3));
        let at_l = at(&self.li)?;
        let at_plus = at(&st.lplus)?;
        let m = (&st.sqrt_k - &q).min(&(&at_l - &at_plus)).min(&(&at_plus - self.c("0.2432")));
        Ok(positive(m, format!("v1/v2 in {q}, L+/(3 lambda (L+ - H)) in {at_plus}")))
    }

    fn sqrtk_upper(&self) -> Check {
        let st = self.st;
        Ok(positive(self.c("0.279") - &st.sqrt_k, format!("sqrt(k) in {}", st.sqrt_k)))
    }

    /// `√k < v1(L−)/(2v2(L−)) + √((v1/(2v2))² + v0/v2) < 0.279`.
    fn sqrtk_upper_chain(&self) -> Check {
        let st = self.st;
        let (v0, v1, v2) = st.v(&st.lminus)?;
        let t = v1.div(&(&v2 * 2))?;
        let up = &t + (t.sqr() + v0.div(&v2)?).sqrt()?;
        let m = (&up - &st.sqrt_k).min(&(self.c("0.279") - &up));
        Ok(positive(m, format!("bound at L- in {up}")))
    }

    fn bounds_h(&self) -> Check {
        Ok(positive(&self.st.big_h - self.c("7.5"), format!("H in {}", self.st.big_h)))
    }

    fn bounds_l(&self) -> Check {
        let st = self.st;
        let top = &self.ctx.h * self.c("0.92") - (&st.l0 + self.c("0.5"));
        let mut e = positive(top, format!("L = {}, L0 in {}", st.l, st.l0));
        if st.l < 15 {
            e.status = Status::Failed;
        }
        Ok(e)
    }

    fn bounds_kl(&self) -> Check {
        let kl = &self.st.k * &self.li;
        let m = (&kl - self.c("0.91")).min(&(self.c("0.99") - &kl));
        Ok(positive(m, format!("kL in {kl}")))
    }

    /// `0.91 < (L+)³/(3λ(L+−H))² < kL < (L−)³/(3λ(L−−H))² < 0.99`.
    fn bounds_kl_chain(&self) -> Check {
        let st = self.st;
        let kl = &st.k * &self.li;
        let at = |x: &IntervalReal| -> Result<IntervalReal, NumericsError> {
            x.powi(3).div(&(&st.lambda * (x - &st.big_h) * 3).sqr())
        };
        let lo = at(&st.lplus)?;
        let hi = at(&st.lminus)?;
        let m = (&lo - self.c("0.91")).min(&(&kl - &lo)).min(&(&hi - &kl)).min(&(self.c("0.99") - &hi));
        Ok(positive(m, format!("kL in {kl}, value at L+ {lo}, at L- {hi}")))
    }

    fn bounds_k(&self) -> Check {
        let st = self.st;
        let kla = &st.k * &self.li * &st.a1 * &st.a2;
        let mut e = positive(&kla - 700, format!("K = {}, kL a1 a2 in {kla}", st.big_k));
        if !self.ki.certainly_gt(&kla) {
            e.status = e.status.and(Status::Indeterminate);
        }
        Ok(e)
    }

    fn sqrtk_l(&self) -> Check {
        let sk_l = &self.st.sqrt_k * &self.li;
        let cap = &self.ctx.h * self.c("0.239");
        Ok(positive(&cap - &sk_l, format!("sqrt(k) L in {sk_l}, 0.239h in {cap}")))
    }

    /// `√k L <= 2L0/(3λ) + √((2L0/(3λ))² + (2L0/λ)(4/(3a2) + 1/(4a1) + L+/(12a1))) < 0.239h`.
    fn sqrtk_l_chain(&self) -> Check {
        let st = self.st;
        let sk_l = &st.sqrt_k * &self.li;
        let u = (&st.l0 * 2).div(&(&st.lambda * 3))?;
        let inner =
            IntervalReal::from_int(4, self.p).div(&(&st.a2 * 3))? + st.a1.recip()?.div_int(4)? + st.lplus.div(&(&st.a1 * 12))?;
        let e = &u + (u.sqr() + (&st.l0 * 2).div(&st.lambda)? * inner).sqrt()?;
        let cap = &self.ctx.h * self.c("0.239");
        let m = (&e - &sk_l).min(&(&cap - &e));
        Ok(positive(m, format!("chain value {e}, 0.239h in {cap}")))
    }

    fn gls_chain(&self) -> Check {
        let st = self.st;
        let (r, s) = (self.int(self.big_r), self.int(self.big_s));
        let g = Rational::from((1, 4)) - Rational::from((Integer::from(self.n), Integer::from(12) * self.big_r * self.big_s));
        let gi = IntervalReal::from_rational(&g, self.p);
        let gls = &gi * &self.li * (&r * &st.a1 + &s * &st.a2);
        let l = &self.li;
        let b41 = l.div_int(4)? * (self.int(st.r1) * &st.a1 + self.int(st.s1) * &st.a2)
            + l.powi(3).sqrt()? * ((&self.ki - 1) * &st.a1 * &st.a2).sqrt()?.div_int(2)?
            - (&self.ki * l.sqr()).div_int(12)? * (st.a1.div(&s)? + st.a2.div(&r)?);
        let b43 = (st.sqrt_k.div_int(3)? + (&st.a1 * 12).recip()?) * &st.a1 * &st.a2 * l.sqr()
            + ((&st.a1 * 4).div_int(3)? + st.a2.div_int(4)?) * l;
        let m = (&b41 - &gls).min(&(&b43 - &gls));
        Ok(positive(m, format!("gL(Ra1+Sa2) in {gls}, first bound {b41}, second bound {b43}")))
    }

    fn ratio_r(&self) -> Check {
        let st = self.st;
        if st.r2 < 2 {
            return Ok(CheckEntry::new(Status::Failed, IntervalReal::zero(self.p), "R2 = 1"));
        }
        let ratio = self.int(st.r1 - 1).div(&self.int(st.r2 - 1))?;
        let c = self.c("0.03");
        let m = (&c - &ratio).min(&(&st.delta1 - &c));
        Ok(positive(m, format!("(R1-1)/(R2-1) in {ratio}")))
    }

    /// `(R1−1)/(R2−1) < 3/(√((K−1)La2/a1) − 1) < 0.03`.
    fn ratio_r_chain(&self) -> Check {
        let st = self.st;
        if st.r2 < 2 {
            return Ok(CheckEntry::new(Status::Failed, IntervalReal::zero(self.p), "R2 = 1"));
        }
        let ratio = self.int(st.r1 - 1).div(&self.int(st.r2 - 1))?;
        let root = ((&self.ki - 1) * &self.li * &st.a2).div(&st.a1)?.sqrt()?;
        let chain = IntervalReal::from_int(3, self.p).div(&(root - 1))?;
        let m = (&chain - &ratio).min(&(self.c("0.03") - &chain));
        Ok(positive(m, format!("chain value {chain}")))
    }

    fn ratio_s(&self) -> Check {
        let st = self.st;
        if st.s2 < 2 {
            return Ok(CheckEntry::new(Status::Failed, IntervalReal::zero(self.p), "S2 = 1"));
        }
        let ratio = self.int(st.s1 - 1).div(&self.int(st.s2 - 1))?;
        Ok(positive(&st.delta1 - &ratio, format!("(S1-1)/(S2-1) in {ratio}")))
    }

    /// `(S1−1)/(S2−1) < S1/S2 < (1 + 3/L)/(4a1√k) √(K/(K−1)) < 0.044`.
    fn ratio_s_chain(&self) -> Check {
        let st = self.st;
        if st.s2 < 2 {
            return Ok(CheckEntry::new(Status::Failed, IntervalReal::zero(self.p), "S2 = 1"));
        }
        let ratio = self.int(st.s1 - 1).div(&self.int(st.s2 - 1))?;
        let plain = self.int(st.s1).div(&self.int(st.s2))?;
        let kk = self.ki.div(&(&self.ki - 1))?.sqrt()?;
        let chain = (IntervalReal::from_int(3, self.p).div(&self.li)? + 1).div(&(&st.a1 * 4 * &st.sqrt_k))? * kk;
        let m = (&plain - &ratio).min(&(&chain - &plain)).min(&(&st.delta1 - &chain));
        Ok(positive(m, format!("S1/S2 in {plain}, chain value {chain}")))
    }

    fn f1_at_600(&self) -> Check {
        let f600 = f1(&IntervalReal::from_int(600, self.p))?;
        let fk = f1(&self.ki)?;
        let m = (self.c("0.00084") - &f600).min(&(&f600 - &fk));
        Ok(positive(m, format!("f1(600) in {f600}, f1(K) in {fk}")))
    }

    fn f2(&self) -> Result<IntervalReal, NumericsError> {
        let st = self.st;
        Ok(f1(&self.ki)? + self.c("1.5") + (&st.delta1 + 1).div(&(&st.sqrt_k * 2))?.ln()?)
    }

    fn f2_bound(&self) -> Check {
        let f2 = self.f2()?;
        Ok(positive(self.c("2.96") - &f2, format!("f2 in {f2}")))
    }

    fn log_b(&self) -> Result<IntervalReal, NumericsError> {
        let front = self.int(self.big_r - 1) * &self.ctx.b2 + self.int(self.big_s - 1) * &self.ctx.b1;
        let k = self.st.big_k;
        let expo = Rational::from((2, Integer::from(k) * (k - 1)));
        Ok(front.div_int(2)?.ln()? - log_superfactorial(k - 1, self.p) * IntervalReal::from_rational(&expo, self.p))
    }

    /// `log(2πK/√e)`.
    fn log_2pik(&self, with_k: bool) -> Result<IntervalReal, NumericsError> {
        let base = IntervalReal::pi(self.p) * 2;
        let base = if with_k { base * &self.ki } else { base };
        Ok(base.ln()? - self.c("0.5"))
    }

    fn logb_upper(&self) -> Check {
        let lb = self.log_b()?;
        let rhs = (&self.ctx.h - &self.st.delta0).div(&self.d)? - self.log_2pik(true)?.div(&(&self.ki - 1))?;
        Ok(positive(&rhs - &lb, format!("log b in {lb}, bound {rhs}")))
    }

    fn theta(&self) -> Result<IntervalReal, NumericsError> {
        let n = self.int(self.n);
        Ok(&self.st.delta0 * (&self.ki - 1) + &self.ctx.h + &self.d * self.log_2pik(true)? - (&self.d + 1) * n.ln()?)
    }

    fn theta0(&self) -> Result<IntervalReal, NumericsError> {
        Ok(self.ctx.bprime.ln()? + self.f2()? - self.li.ln()? + self.log_2pik(false)?)
    }

    fn theta1(&self) -> Result<IntervalReal, NumericsError> {
        Ok(&self.st.delta0 * &self.ki - self.ki.ln()? - self.li.ln()? * 2
            + self.ctx.bprime.ln()?
            + self.f2()?
            + self.log_2pik(false)?)
    }

    fn theta_decomposition(&self) -> Check {
        let th = self.theta()?;
        if self.ctx.h_branch == Some(HBranch::LogBprime) {
            let rhs = (&self.d - 1) * self.theta0()? + self.theta1()?;
            Ok(positive(&th - &rhs, format!("Theta in {th}, (D-1)Theta0 + Theta1 in {rhs}")))
        } else {
            let eps = epsilon_of_n(self.n, self.p)?;
            Ok(positive(&th - &eps, format!("h not on the log branch; Theta in {th} against epsilon(N) in {eps}")))
        }
    }

    fn theta0_positive(&self) -> Check {
        let t0 = self.theta0()?;
        Ok(positive(t0.clone(), format!("Theta0 in {t0}")))
    }

    fn theta1_above(&self) -> Check {
        let t1 = self.theta1()?;
        let c = self.c("0.004");
        let chain = &self.st.delta0 * &self.ki - self.ki.ln()?;
        let m = (&t1 - &c).min(&(&chain - &c));
        Ok(positive(m, format!("Theta1 in {t1}, delta0 K - log K in {chain}")))
    }

    fn epsilon_below(&self) -> Check {
        let e_n = epsilon_of_n(self.n, self.p)?;
        let e_10k = epsilon_of_n(10_000, self.p)?;
        let c = self.c("0.004");
        let m = (&c - &e_n).min(&(&c - &e_10k)).min(&(&e_10k - &e_n));
        let mut e = positive(m, format!("N = {}, epsilon(N) in {e_n}, epsilon(10000) in {e_10k}", self.n));
        if self.n <= 10_000 {
            e.status = Status::Failed;
        }
        Ok(e)
    }

    fn kl_factor(&self) -> Check {
        let st = self.st;
        let kl = self.int(self.n);
        let rhs = self.c("1.00126") * &st.k * self.li.sqr() * &st.a1 * &st.a2;
        Ok(positive(&rhs - &kl, format!("KL = {}, bound {rhs}", self.n)))
    }

    fn main_term(&self) -> Result<IntervalReal, NumericsError> {
        Ok(&self.st.mu * self.int(self.n) * self.st.rho.ln()?)
    }

    fn mu_kl(&self) -> Check {
        let mt = self.main_term()?;
        let rhs = self.c(MAIN_COEFF) * &self.ah2;
        Ok(positive(&rhs - &mt, format!("mu KL log rho in {mt}, 2.7701ah^2 in {rhs}")))
    }

    fn r_bound(&self) -> Check {
        let rhs = self.c("0.291") * &self.ctx.h * &self.st.a2;
        Ok(positive(&rhs - self.int(self.big_r), format!("R = {}", self.big_r)))
    }

    fn s_bound(&self) -> Check {
        let rhs = self.c("0.266") * &self.ctx.a * &self.ctx.h;
        Ok(positive(&rhs - self.int(self.big_s), format!("S = {}", self.big_s)))
    }

    fn logah2(&self) -> Check {
        let v = self.ah2.ln()?.div(&self.ah2)?;
        Ok(positive(self.c("0.0011") - &v, format!("log(ah^2)/(ah^2) in {v}")))
    }

    fn rlsl(&self) -> Check {
        let m = self.int(self.big_r.max(self.big_s) * self.st.l);
        Ok(positive(self.c("0.268") * &self.ah2 - &m, format!("max(RL, SL) = {}", self.big_r.max(self.big_s) * self.st.l)))
    }

    fn threshold(&self) -> IntervalReal {
        -(self.c(THRESHOLD_COEFF) * &self.ah2)
    }

    fn log_m(&self) -> Result<IntervalReal, NumericsError> {
        log_conversion(self.st.l, self.big_r, self.big_s, &self.ctx.b1, &self.ctx.b2, &self.threshold())
    }

    fn slack(&self) -> Check {
        let lm = self.log_m()?;
        let rhs = self.c(SLACK_COEFF) * &self.ah2;
        Ok(positive(&rhs - &lm, format!("log M(T) in {lm}, T = -2.75ah^2")))
    }

    fn slack_uniform(&self) -> Check {
        let v = (-(self.c("2.749") * &self.ah2)).exp() + (self.c("0.268") * &self.ah2).ln()?;
        let rhs = self.c(SLACK_COEFF) * &self.ah2;
        Ok(positive(&rhs - &v, format!("e^(-2.749ah^2) + log(0.268ah^2) in {v}, 0.0003ah^2 in {rhs}")))
    }

    fn final_coeff(&self) -> Check {
        let lm = self.log_m()?;
        let b = -self.main_term()? - &lm;
        let target = -(self.c(FINAL_COEFF) * &self.ah2);
        let mut e = positive(&b - &target, format!("B(T) in {b}"));
        let sum = super::dec(MAIN_COEFF) + super::dec(SLACK_COEFF);
        if sum > super::dec(FINAL_COEFF) {
            e.status = Status::Failed;
        }
        Ok(e)
    }

    fn phi_residual(&self) -> Check {
        let phi = &self.st.phi;
        let tol = self.c("1e-20");
        let m = &tol - phi.abs();
        let mut e = positive(m, format!("Phi in {phi}"));
        if !phi.contains_zero() {
            e.status = Status::Failed;
        }
        Ok(e)
    }

    fn main_path(&self) -> Check {
        let four = self.ctx.h.sqr() * 4;
        Ok(positive(&self.ctx.bprime - &four, format!("b' in {}, 4h^2 in {four}", self.ctx.bprime)))
    }
}

/// Every check name, in report order.
pub const CHECK_NAMES: [&str; 35] = [
    "main_path_bprime",
    "phi_residual",
    "l_quadratic_roots",
    "sqrtk_lower",
    "sqrtk_lower_chain",
    "sqrtk_upper",
    "sqrtk_upper_chain",
    "big_h_above_7.5",
    "l_range",
    "kl_range",
    "kl_range_chain",
    "big_k_above_700",
    "sqrtk_l_below_0.239h",
    "sqrtk_l_below_0.239h_chain",
    "gls_upper_chain",
    "ratio_R_delta1",
    "ratio_R_delta1_chain",
    "ratio_S_delta1",
    "ratio_S_delta1_chain",
    "f1_at_600",
    "f2_bound",
    "logb_upper",
    "theta_decomposition",
    "theta0_positive",
    "theta1_above_0.004",
    "epsilon_below_0.004",
    "KL_factor_1.00126",
    "muKLlogrho_2.7701",
    "R_bound_0.291",
    "S_bound_0.266",
    "logah2_0.0011",
    "RLSL_0.268",
    "slack_0.0003",
    "slack_uniform_0.0003",
    "final_2.7704",
];

pub fn replay_inequalities(state: &PipelineState, ctx: &ReplayContext, p: Precision) -> ReplayReport {
    let st = state;
    let ctx_p = ReplayContext {
        d: ctx.d.clone(),
        a: ctx.a.round_to(p),
        h: ctx.h.round_to(p),
        bprime: ctx.bprime.round_to(p),
        b1: ctx.b1.round_to(p),
        b2: ctx.b2.round_to(p),
        h_branch: ctx.h_branch,
    };
    let ch = Chain {
        st,
        ctx: &ctx_p,
        p,
        li: IntervalReal::from_int(st.l as i64, p),
        ki: IntervalReal::from_integer(&Integer::from(st.big_k), p),
        big_r: st.r1 + st.r2 - 1,
        big_s: st.s1 + st.s2 - 1,
        n: st.big_k * st.l,
        ah2: &ctx_p.a * ctx_p.h.sqr(),
        d: IntervalReal::from_rational(&ctx.d, p),
    };
    let results: [Check; 35] = [
        ch.main_path(),
        ch.phi_residual(),
        ch.l_quadratic_roots(),
        ch.sqrtk_lower(),
        ch.sqrtk_lower_chain(),
        ch.sqrtk_upper(),
        ch.sqrtk_upper_chain(),
        ch.bounds_h(),
        ch.bounds_l(),
        ch.bounds_kl(),
        ch.bounds_kl_chain(),
        ch.bounds_k(),
        ch.sqrtk_l(),
        ch.sqrtk_l_chain(),
        ch.gls_chain(),
        ch.ratio_r(),
        ch.ratio_r_chain(),
        ch.ratio_s(),
        ch.ratio_s_chain(),
        ch.f1_at_600(),
        ch.f2_bound(),
        ch.logb_upper(),
        ch.theta_decomposition(),
        ch.theta0_positive(),
        ch.theta1_above(),
        ch.epsilon_below(),
        ch.kl_factor(),
        ch.mu_kl(),
        ch.r_bound(),
        ch.s_bound(),
        ch.logah2(),
        ch.rlsl(),
        ch.slack(),
        ch.slack_uniform(),
        ch.final_coeff(),
    ];
    let checks = CHECK_NAMES
        .iter()
        .zip(results)
        .map(|(name, r)| {
            let mut entry = r
                .unwrap_or_else(|e| CheckEntry::new(Status::Indeterminate, IntervalReal::zero(p), format!("not evaluable: {e}")));
            entry.discrepancy = entry.status == Status::Failed;
            ReplayCheck { name: name.to_string(), entry }
        })
        .collect();
    ReplayReport { checks, precision: p }
}

/// Replays at `p`, then re-runs at higher precision for any check left
/// indeterminate, keeping the first decisive result per check.
pub fn replay_escalating(
    ctx: &ReplayContext,
    rebuild: impl Fn(Precision) -> Result<(PipelineState, ReplayContext), PipelineError>,
    state: &PipelineState,
    p: Precision,
) -> ReplayReport {
    let mut rep = replay_inequalities(state, ctx, p);
    let mut q = p;
    while rep.checks.iter().any(|c| c.entry.status == Status::Indeterminate) && q < Precision::MAX_ESCALATION {
        q = q.doubled();
        let Ok((st2, ctx2)) = rebuild(q) else { break };
        if (st2.l, st2.big_k, st2.r2, st2.s2) != (state.l, state.big_k, state.r2, state.s2) {
            break;
        }
        let fresh = replay_inequalities(&st2, &ctx2, q);
        for (old, new) in rep.checks.iter_mut().zip(fresh.checks) {
            if old.entry.status == Status::Indeterminate && new.entry.status != Status::Indeterminate {
                *old = new;
            }
        }
        rep.precision = q;
    }
    rep
}

/// One synthetic point of the built-in grid.
#[derive(Clone, Debug)]
pub struct SuitePoint {
    pub d: u32,
    pub h: u32,
    pub state: Option<PipelineState>,
    pub report: Option<ReplayReport>,
    /// Why the point is special, if it is.
    pub note: Option<String>,
    pub error: Option<String>,
}

fn suite_context(d: u32, h: u32, p: Precision) -> Result<(ReplayContext, Option<String>), PipelineError> {
    let dq = Rational::from(d);
    let di = IntervalReal::from_int(d as i64, p);
    let hi = IntervalReal::from_int(h as i64, p);
    let a1 = dec_i(A_PI_COEFF, p) * IntervalReal::pi(p);
    // as for an α of height (log 5)/2, like (3+4i)/5 and its analogues
    let a = &a1 + &di * IntervalReal::from_int(5, p).ln()?;
    let four_h2 = hi.sqr() * 4;
    let bp_h = ((&hi - dec_i(DELTA0, p)).div(&di)? - dec_i("2.96", p)).exp();
    let (bprime, branch, note) = if bp_h.certainly_gt(&four_h2) {
        (bp_h, Some(HBranch::LogBprime), None)
    } else {
        let bp = &four_h2 + 1;
        let (h_true, _) = h_from_bprime(&bp, &dq, p)?;
        let note = format!(
            "no main-path instance has (D, h) = ({d}, {h}): b' > 4h^2 forces h >= {}; replayed with b' = 4h^2 + 1 and h = {h}",
            h_true.endpoints_decimal(6).0
        );
        (bp, Some(HBranch::Floor17), Some(note))
    };
    let n = bprime.div(&(a.recip()? + a1.recip()?))?;
    let ctx = ReplayContext { d: dq, a, h: hi, bprime, b1: n.clone(), b2: n, h_branch: branch };
    Ok((ctx, note))
}

/// The grid `D ∈ {1,2,3}`, `h ∈ {17, 50, 100, 10^3, 10^4}` with
/// `a = 9.05π + D log 5` and `b1 = b2` chosen to make `b'` attain `h`.
pub fn paper_suite(p: Precision) -> Vec<SuitePoint> {
    let mut out = Vec::new();
    for d in [1u32, 2, 3] {
        for h in [17u32, 50, 100, 1000, 10000] {
            let build = |q: Precision| -> Result<(PipelineState, ReplayContext, Option<String>), PipelineError> {
                let (ctx, note) = suite_context(d, h, q)?;
                let st = derive_state(
                    &ctx.h,
                    &(dec_i(A_PI_COEFF, q) * IntervalReal::pi(q)),
                    &ctx.a,
                    &super::dec(RHO),
                    &super::dec(MU),
                    None,
                    4,
                    q,
                )?;
                Ok((st, ctx, note))
            };
            let mut built = None;
            let mut err = None;
            for q in p.escalation() {
                match build(q) {
                    Ok(b) => {
                        built = Some(b);
                        break;
                    }
                    Err(PipelineError::Indeterminate(s)) => err = Some(s),
                    Err(e) => {
                        err = Some(e.to_string());
                        break;
                    }
                }
            }
            match built {
                Some((st, ctx, note)) => {
                    let q = st.precision;
                    let rep = replay_escalating(&ctx, |r| build(r).map(|(s, c, _)| (s, c)), &st, q);
                    out.push(SuitePoint { d, h, state: Some(st), report: Some(rep), note, error: None });
                }
                None => out.push(SuitePoint { d, h, state: None, report: None, note: None, error: err }),
            }
        }
    }
    out
}
