//! The 2F1 power series and numeric verification of transformations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::hp::{eval_map, HpComplex, HpReal, Prec};
use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::poly::RationalMap;
use crate::triple::{eval_map_c64, HpgCase, RadicalFactor, Transformation};

/// Parameters of 2F1(a, b; c; z).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HpgParams {
    pub a: BigRat,
    pub b: BigRat,
    pub c: BigRat,
}

impl HpgParams {
    pub fn new(a: BigRat, b: BigRat, c: BigRat) -> Result<Self> {
        if !c.is_positive() && c.is_integer() {
            return Err(Error::Domain(format!("c = {c} is a non-positive integer")));
        }
        Ok(HpgParams { a, b, c })
    }

    pub fn of(case: HpgCase) -> Self {
        let (a, b, c) = case.params();
        HpgParams { a, b, c }
    }
}

/// Largest |z| the series is summed at directly.
pub const SERIES_RADIUS: f64 = 0.9;

/// Working precision for a target number of digits.
pub fn working(prec: u32) -> Prec {
    Prec::digits(prec + 15)
}

/// Sum the series at z, stopping once a term drops below 10^-(prec+10)
/// of the partial sum. Falls back to the Pfaff form
/// (1-z)^-a 2F1(a, c-b; c; z/(z-1)) when that argument is smaller.
pub fn hpg2f1(p: &HpgParams, z: &HpComplex, prec: u32) -> Result<HpComplex> {
    if !p.c.is_positive() && p.c.is_integer() {
        return Err(Error::Domain(format!("c = {} is a non-positive integer", p.c)));
    }
    let (zr, zi) = z.to_c64();
    let r = zr.hypot(zi);
    let (wr, wi) = {
        let d = (zr - 1.0).powi(2) + zi * zi;
        ((zr * (zr - 1.0) + zi * zi) / d, (zi * (zr - 1.0) - zr * zi) / d)
    };
    let rw = wr.hypot(wi);
    if rw < r && r > 0.5 {
        if rw > SERIES_RADIUS {
            return Err(Error::Domain(format!("|z| = {r:.3} outside the series disc")));
        }
        let one = HpComplex::one(z.prec());
        let w = z.div(&z.sub(&one));
        let pf = HpgParams { a: p.a.clone(), b: &p.c - &p.b, c: p.c.clone() };
        let s = series(&pf, &w, prec);
        return Ok(one.sub(z).pow_rat(&-p.a.clone()).mul(&s));
    }
    if r > SERIES_RADIUS {
        return Err(Error::Domain(format!("|z| = {r:.3} outside the series disc")));
    }
    Ok(series(p, z, prec))
}

fn series(p: &HpgParams, z: &HpComplex, prec: u32) -> HpComplex {
    let wp = z.prec();
    let cutoff = ((prec + 10) as f64 * std::f64::consts::LOG2_10).ceil() as i64;
    let mut sum = HpComplex::one(wp);
    let mut term = HpComplex::one(wp);
    let mut n = BigRat::zero();
    for _ in 0..100_000 {
        let ratio = (&p.a + &n) * (&p.b + &n) / ((&p.c + &n) * (&n + BigRat::one()));
        if ratio.is_zero() {
            break;
        }
        term = term.mul(z).mul_rat(&ratio);
        sum = sum.add(&term);
        n += BigRat::one();
        match (term.ilog2(), sum.ilog2()) {
            (None, _) => break,
            (Some(t), Some(s)) if t < s - cutoff => break,
            _ => {}
        }
    }
    sum
}

/// theta(z) with every factor on its principal branch.
pub fn eval_radical(theta: &RadicalFactor, z: &HpComplex) -> Option<HpComplex> {
    let mut acc = HpComplex::one(z.prec());
    for (base, e) in theta.factors() {
        let v = eval_map(base, z)?;
        acc = acc.mul(&v.pow_rat(e));
    }
    Some(acc)
}

/// Whether z is a usable sample point: along the segment [0, z] the map
/// stays inside |phi| < 1/2 and every radical base stays in the right
/// half-plane, so the germs at 0 continue to z on principal branches.
fn branch_safe(t: &Transformation, z: f64) -> bool {
    const STEPS: usize = 64;
    z < SERIES_RADIUS
        && (1..=STEPS).all(|k| {
            let x = z * k as f64 / STEPS as f64;
            eval_map_c64(&t.phi, (x, 0.0)).is_some_and(|(a, b)| a.hypot(b) < 0.5)
                && t.theta.factors().iter().all(|(m, _)| eval_map_c64(m, (x, 0.0)).is_some_and(|(a, _)| a > 0.0))
        })
}

/// The default points j/1000, j = 1..count, scaled down by powers of two
/// until each is branch-safe for t.
pub fn branch_safe_points(t: &Transformation, count: usize) -> Result<Vec<BigRat>> {
    for halvings in 0..64u32 {
        let scale = BigRat::new(BigInt::one(), BigInt::from(1000) << halvings as usize);
        let pts: Vec<BigRat> = (1..=count as i64).map(|j| &scale * BigRat::from_integer(j.into())).collect();
        if pts.iter().all(|x| branch_safe(t, crate::arith::rat_to_f64(x))) {
            return Ok(pts);
        }
    }
    Err(Error::BranchUnsafe(format!("no safe points for phi = {}", t.phi)))
}

/// Outcome of a numeric identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub points: Vec<String>,
    pub max_rel_err: f64,
    /// log10 of the error, kept separately because it underflows f64 rarely
    /// but is the number the tolerance is compared with.
    pub log10_err: f64,
}

impl IdentityCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rel_err < tol
    }
}

fn log10_of(x: &HpReal) -> f64 {
    match x.ilog2() {
        None => f64::NEG_INFINITY,
        Some(e) if e < -1000 => e as f64 * std::f64::consts::LOG10_2,
        _ => x.to_f64().log10(),
    }
}

/// max |LHS - RHS| / |LHS| over the points, for
/// 2F1(source; z) = theta(z) 2F1(target; phi(z)).
pub fn verify_identity(t: &Transformation, points: &[BigRat], prec: u32) -> Result<IdentityCheck> {
    let wp = working(prec);
    let src = HpgParams::of(t.source);
    let tgt = HpgParams::of(t.target);
    let mut worst = HpReal::zero(wp);
    for x in points {
        let z = HpComplex::from_rat(wp, x);
        let lhs = hpg2f1(&src, &z, prec)?;
        let phi = eval_map(&t.phi, &z).ok_or_else(|| Error::BranchUnsafe(format!("phi has a pole at {x}")))?;
        let theta = eval_radical(&t.theta, &z).ok_or_else(|| Error::BranchUnsafe(format!("theta has a pole at {x}")))?;
        let rhs = theta.mul(&hpg2f1(&tgt, &phi, prec)?);
        let e = rhs.rel_err(&lhs);
        if e.cmp_value(&worst).is_gt() {
            worst = e;
        }
    }
    let log10_err = log10_of(&worst);
    Ok(IdentityCheck {
        points: points.iter().map(|p| p.to_string()).collect(),
        max_rel_err: 10f64.powf(log10_err),
        log10_err,
    })
}

/// verify_identity at the default ten branch-safe points.
pub fn verify_identity_auto(t: &Transformation, prec: u32) -> Result<IdentityCheck> {
    let pts = branch_safe_points(t, 10)?;
    verify_identity(t, &pts, prec)
}

/// Evaluate a rational map at a rational point, exactly.
pub fn eval_map_rat(m: &RationalMap, x: &BigRat) -> Option<crate::arith::FieldElement> {
    m.eval(&crate::arith::FieldElement::from_rat(m.ring(), x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldElement, Ring, RingElement};
    use crate::triple::{generate, quadratic_cross, to_transformation, CrossKind, Family};

    fn q(a: i64, b: i64) -> BigRat {
        BigRat::new(a.into(), b.into())
    }

    #[test]
    fn series_basics() {
        let p = HpgParams::of(HpgCase::E1);
        let wp = working(30);
        let one = hpg2f1(&p, &HpComplex::zero(wp), 30).unwrap();
        assert_eq!(one, HpComplex::one(wp));
        // 2F1(1, 1; 2; z) = -ln(1 - z)/z
        let p = HpgParams::new(q(1, 1), q(1, 1), q(2, 1)).unwrap();
        let z = HpComplex::from_rat(wp, &q(1, 2));
        let v = hpg2f1(&p, &z, 30).unwrap();
        let want = HpReal::from_int(wp, 2).ln().ldexp(1);
        assert!(v.re.sub(&want).abs().ilog2().unwrap() < -110);
        // Pfaff region
        let z = HpComplex::from_rat(wp, &q(-3, 1));
        let v = hpg2f1(&p, &z, 30).unwrap();
        let want = HpReal::from_int(wp, 4).ln().div(&HpReal::from_int(wp, 3));
        assert!(v.re.sub(&want).abs().ilog2().unwrap() < -110);
        assert!(hpg2f1(&p, &HpComplex::from_rat(wp, &q(95, 100)), 30).is_err());
        assert!(HpgParams::new(q(1, 2), q(1, 2), q(-2, 1)).is_err());
    }

    #[test]
    fn printed_degree_two_identities() {
        let u = RingElement::parse("1+i", Some(Ring::Gauss)).unwrap();
        let t = to_transformation(&generate(Family::E1, &u).unwrap()).unwrap();
        let c = verify_identity(&t, &[q(1, 100)], 30).unwrap();
        assert!(c.max_rel_err < 1e-25, "{c:?}");
        let c = verify_identity(&quadratic_cross(CrossKind::E3ToE2), &[q(2, 100)], 30).unwrap();
        assert!(c.max_rel_err < 1e-25, "{c:?}");
        let id = to_transformation(&generate(Family::E2, &RingElement::one(Ring::Eisenstein)).unwrap()).unwrap();
        assert!(verify_identity_auto(&id, 30).unwrap().max_rel_err < 1e-40);
        let u = RingElement::parse("1+2i", Some(Ring::Gauss)).unwrap();
        let t = to_transformation(&generate(Family::E1, &u).unwrap()).unwrap();
        assert!(verify_identity_auto(&t, 30).unwrap().max_rel_err < 1e-25);
    }

    #[test]
    fn broken_map_is_caught() {
        let u = RingElement::parse("2", Some(Ring::Gauss)).unwrap();
        let mut t = to_transformation(&generate(Family::E1, &u).unwrap()).unwrap();
        t.phi = t.phi.scale(&FieldElement::parse("1+1/1000", Some(Ring::Gauss)).unwrap());
        assert!(verify_identity_auto(&t, 30).unwrap().max_rel_err > 1e-8);
    }
}
