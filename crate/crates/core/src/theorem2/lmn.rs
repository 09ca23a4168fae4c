//! The earlier closed-form estimate for `Λ0 = b2 log α − b1 πi`, evaluated
//! as a logarithmic bound for side-by-side output.

use rug::Integer;

use super::{check_preconditions, dec_i, theorem2_bound, PipelineError};
use crate::algebraic::AlgebraicNumber;
use crate::certificate::BoundCertificate;
use crate::numerics::{IntervalReal, Precision};

#[derive(Clone, Debug)]
pub struct LmnComparison {
    pub theorem2: Result<BoundCertificate, PipelineError>,
    /// `max{20, 10.98|log α| + 2D h(α)}`.
    pub lmn_a: IntervalReal,
    /// `max{17, √D/10, D(log(b1/(2a) + b2/68.9) + 2.35) + 5.03}`.
    pub lmn_h: IntervalReal,
    /// `−8.87 a h²`, read as a lower bound for `log|Λ0|`.
    pub lmn_bound: IntervalReal,
    pub label: String,
}

pub fn compare_lmn(alpha: &AlgebraicNumber, b1: &Integer, b2: &Integer, p: Precision) -> Result<LmnComparison, PipelineError> {
    if *b1 < 1 || *b2 < 1 {
        return Err(PipelineError::Rejected("b1 and b2 must be positive integers".into()));
    }
    check_preconditions(alpha)?;
    let theorem2 = theorem2_bound(alpha, b1, b2, p);
    let d = IntervalReal::from_int(alpha.degree() as i64 / 2, p);
    let h_alpha = alpha.absolute_log_height(p)?;
    // |log α| = |arg α| on the unit circle
    let abs_log = alpha.principal_argument(p)?.abs();
    let a = IntervalReal::from_int(20, p).max(&(dec_i("10.98", p) * abs_log + &d * 2 * &h_alpha));
    let inner = IntervalReal::from_integer(b1, p).div(&(&a * 2))? + IntervalReal::from_integer(b2, p).div(&dec_i("68.9", p))?;
    let third = &d * (inner.ln()? + dec_i("2.35", p)) + dec_i("5.03", p);
    let h = IntervalReal::from_int(17, p).max(&d.sqrt()?.div_int(10)?).max(&third);
    let bound = -(dec_i("8.87", p) * &a * h.sqr());
    Ok(LmnComparison {
        theorem2,
        lmn_a: a,
        lmn_h: h,
        lmn_bound: bound,
        label: "as interpreted: log|b2 log(alpha) - b1 pi i| >= -8.87 a h^2".into(),
    })
}
