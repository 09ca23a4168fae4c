//! Certified isolation of all complex roots of an integer polynomial.
//!
//! Approximations come from the Aberth–Ehrlich iteration. They are then
//! certified with the Weierstrass-correction inclusion theorem: with
//! `W_i = f(z_i) / (a_n prod_{j != i} (z_i - z_j))`, every root of `f` lies in
//! the union of the disks `|z - z_i| <= n |W_i|`, and a connected component
//! made of `m` disks holds exactly `m` roots. Pairwise disjoint disks
//! therefore isolate one root each.

use std::cmp::Ordering;

use rug::Float;

use super::complex::ComplexEnclosure;
use super::polynomial::IntegerPolynomial;
use crate::numerics::{IntervalReal, Precision};

#[derive(Clone, Debug)]
struct Cf {
    re: Float,
    im: Float,
}

impl Cf {
    fn new(prec: u32, re: f64, im: f64) -> Self {
        Cf { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    fn with_prec(&self, prec: u32) -> Self {
        Cf { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    fn prec(&self) -> u32 {
        self.re.prec()
    }

    fn add(&self, o: &Cf) -> Cf {
        let p = self.prec();
        Cf { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }

    fn sub(&self, o: &Cf) -> Cf {
        let p = self.prec();
        Cf { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }

    fn mul(&self, o: &Cf) -> Cf {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cf { re, im }
    }

    fn norm_sq(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    fn div(&self, o: &Cf) -> Option<Cf> {
        let d = o.norm_sq();
        if d.is_zero() {
            return None;
        }
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        Some(Cf { re: re / &d, im: im / &d })
    }
}

fn horner(coeffs: &[Float], z: &Cf) -> Cf {
    let p = z.prec();
    let mut acc = Cf::new(p, 0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

fn aberth(f: &IntegerPolynomial, prec: u32, start: Option<Vec<Cf>>) -> Vec<Cf> {
    let n = f.degree();
    let coeffs: Vec<Float> = f.coeffs().iter().map(|c| Float::with_val(prec, c)).collect();
    let dcoeffs: Vec<Float> = f.derivative_coeffs().iter().map(|c| Float::with_val(prec, c)).collect();
    let mut z: Vec<Cf> = match start {
        Some(s) => s.iter().map(|c| c.with_prec(prec)).collect(),
        None => {
            let a0 = f.constant().to_f64().abs();
            let an = f.leading().to_f64().abs();
            let r = if a0 == 0.0 { 1.0 } else { (a0 / an).powf(1.0 / n as f64) };
            (0..n)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
                    Cf::new(prec, r * t.cos(), r * t.sin())
                })
                .collect()
        }
    };
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 6));
    let tol_sq = Float::with_val(prec, tol.square_ref());
    let max_iter = 200 + 20 * n;
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let pv = horner(&coeffs, &z[i]);
            if pv.norm_sq().is_zero() {
                continue;
            }
            let dv = horner(&dcoeffs, &z[i]);
            let ratio = match pv.div(&dv) {
                Some(r) => r,
                None => {
                    z[i] = z[i].add(&Cf::new(prec, 1e-3, 1e-3));
                    converged = false;
                    continue;
                }
            };
            let mut s = Cf::new(prec, 0.0, 0.0);
            for j in 0..n {
                if j != i {
                    if let Some(q) = Cf::new(prec, 1.0, 0.0).div(&z[i].sub(&z[j])) {
                        s = s.add(&q);
                    }
                }
            }
            let denom = Cf::new(prec, 1.0, 0.0).sub(&ratio.mul(&s));
            let w = ratio.div(&denom).unwrap_or(ratio);
            let scale = z[i].norm_sq().max(&Float::with_val(prec, 1));
            if w.norm_sq() > Float::with_val(prec, &tol_sq * &scale) {
                converged = false;
            }
            z[i] = z[i].sub(&w);
        }
        if converged {
            break;
        }
    }
    z
}

/// Certified isolating disks for all roots of a polynomial.
#[derive(Clone, Debug)]
pub struct RootSet {
    centers: Vec<ComplexEnclosure>,
    radii: Vec<IntervalReal>,
    boxes: Vec<ComplexEnclosure>,
    precision: Precision,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Box enclosing root `i`.
    pub fn enclosure(&self, i: usize) -> &ComplexEnclosure {
        &self.boxes[i]
    }

    pub fn enclosures(&self) -> &[ComplexEnclosure] {
        &self.boxes
    }

    pub fn center(&self, i: usize) -> &ComplexEnclosure {
        &self.centers[i]
    }

    /// Upper bound on the radius of the isolating disk of root `i`.
    pub fn radius(&self, i: usize) -> &IntervalReal {
        &self.radii[i]
    }

    fn disk_avoids(&self, c: &ComplexEnclosure, r: &IntervalReal, j: usize) -> bool {
        let d2 = (c - &self.centers[j]).abs_sq();
        let reach = (r + &self.radii[j]).sqr();
        d2.certainly_gt(&reach)
    }

    /// Root `i` is certified real: the mirror image of its disk meets no
    /// other disk, so the conjugate root is the root itself.
    pub fn is_certified_real(&self, i: usize) -> bool {
        let mirrored = self.centers[i].conj();
        (0..self.len()).filter(|&j| j != i).all(|j| self.disk_avoids(&mirrored, &self.radii[i], j))
    }

    /// Root `i` is certified to lie on the unit circle. Valid only when the
    /// polynomial is self-inversive, so that `1/conj(z)` is again a root.
    ///
    /// The image of the root box under `z -> 1/conj(z)` must land in a disk
    /// around the centre that meets no other isolating disk; then the mirror
    /// root coincides with root `i`.
    pub fn is_certified_on_unit_circle(&self, i: usize) -> bool {
        let b = &self.boxes[i];
        if b.contains_zero() {
            return false;
        }
        let image = match b.conj().recip() {
            Ok(v) => v,
            Err(_) => return false,
        };
        let p = self.precision;
        let c = &self.centers[i];
        let mut gap: Option<IntervalReal> = None;
        for j in (0..self.len()).filter(|&j| j != i) {
            let d = (c - &self.centers[j]).abs() - &self.radii[j];
            gap = Some(match gap {
                Some(g) => g.min(&d),
                None => d,
            });
        }
        let big = match gap {
            Some(g) => {
                if g.positive_status() != crate::numerics::Status::Verified {
                    return false;
                }
                // any radius strictly inside the gap works; take half of its lower end
                let lo = IntervalReal::point(g.lo().clone());
                lo.div_int(2).expect("nonzero")
            }
            None => IntervalReal::one(p),
        };
        let big_sq = big.sqr();
        for re in [image.re.lo(), image.re.hi()] {
            for im in [image.im.lo(), image.im.hi()] {
                let corner = ComplexEnclosure::from_point(re.clone(), im.clone());
                let d2 = (&corner - c).abs_sq();
                if !d2.certainly_lt(&IntervalReal::point(big_sq.lo().clone())) {
                    return false;
                }
            }
        }
        // The enlarged disk must also avoid every other disk.
        let radius_hi = IntervalReal::point(big.hi().clone());
        (0..self.len()).filter(|&j| j != i).all(|j| self.disk_avoids(c, &radius_hi, j))
    }

    /// `Less` if root `i` lies certainly inside the unit circle, `Greater` if
    /// certainly outside, `None` if its box meets the circle.
    pub fn side_of_unit_circle(&self, i: usize) -> Option<Ordering> {
        let m = self.boxes[i].abs_sq();
        let one = IntervalReal::one(self.precision);
        if m.certainly_lt(&one) {
            Some(Ordering::Less)
        } else if m.certainly_gt(&one) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Attempts certified isolation at precision `p`. Returns `None` when the
/// disks overlap or a correction cannot be bounded.
pub fn isolate_roots(f: &IntegerPolynomial, p: Precision) -> Option<RootSet> {
    let n = f.degree();
    let seed = aberth(f, 53, None);
    let approx = if p.bits() > 53 { aberth(f, p.bits(), Some(seed)) } else { seed };
    let centers: Vec<ComplexEnclosure> =
        approx.iter().map(|c| ComplexEnclosure::from_point(c.re.clone(), c.im.clone())).collect();
    let lead = IntervalReal::from_integer(f.leading(), p);
    let nn = IntervalReal::from_int(n as i64, p);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let val = f.eval_complex(&centers[i], p);
        let mut prod = ComplexEnclosure::real(lead.clone());
        for j in (0..n).filter(|&j| j != i) {
            prod = &prod * &(&centers[i] - &centers[j]);
        }
        let w = val.div(&prod).ok()?;
        let r = &nn * &w.abs();
        radii.push(IntervalReal::point(r.hi().clone()));
    }
    for i in 0..n {
        for j in i + 1..n {
            let d2 = (&centers[i] - &centers[j]).abs_sq();
            if !d2.certainly_gt(&(&radii[i] + &radii[j]).sqr()) {
                return None;
            }
        }
    }
    let boxes = centers
        .iter()
        .zip(&radii)
        .map(|(c, r)| {
            let spread = (-r).hull(r);
            ComplexEnclosure::new(&c.re + &spread, &c.im + &spread)
        })
        .collect();
    Some(RootSet { centers, radii, boxes, precision: p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_roots() {
        let f: IntegerPolynomial = "5,-6,5".parse().unwrap();
        let rs = isolate_roots(&f, Precision::DEFAULT).unwrap();
        assert_eq!(rs.len(), 2);
        let want_re = Float::with_val(128, 0.6);
        let any_has = rs.enclosures().iter().any(|b| b.re.width() < 1e-30 && (b.re.to_f64() - 0.6).abs() < 1e-15);
        assert!(any_has, "{:?}", want_re);
        for i in 0..2 {
            assert!(rs.is_certified_on_unit_circle(i));
            assert!(!rs.is_certified_real(i));
        }
    }

    #[test]
    fn real_roots_certified_real() {
        let f: IntegerPolynomial = "-2,0,1".parse().unwrap();
        let rs = isolate_roots(&f, Precision::DEFAULT).unwrap();
        assert!((0..2).all(|i| rs.is_certified_real(i)));
        let g: IntegerPolynomial = "1,-3,1".parse().unwrap();
        let rs = isolate_roots(&g, Precision::DEFAULT).unwrap();
        for i in 0..2 {
            assert!(!rs.is_certified_on_unit_circle(i));
            assert!(rs.side_of_unit_circle(i).is_some());
        }
    }

    #[test]
    fn linear_and_exact_roots() {
        let f: IntegerPolynomial = "-1,1".parse().unwrap();
        let rs = isolate_roots(&f, Precision::DEFAULT).unwrap();
        assert!(rs.is_certified_on_unit_circle(0));
        assert!(rs.is_certified_real(0));
        let g: IntegerPolynomial = "0,1".parse().unwrap();
        let rs = isolate_roots(&g, Precision::DEFAULT).unwrap();
        assert!(rs.enclosure(0).contains_zero());
    }

    #[test]
    fn cyclotomic_seven() {
        let f: IntegerPolynomial = "1,1,1,1,1,1,1".parse().unwrap();
        let rs = isolate_roots(&f, Precision::DEFAULT).unwrap();
        assert_eq!(rs.len(), 6);
        assert!((0..6).all(|i| rs.is_certified_on_unit_circle(i)));
    }
}
