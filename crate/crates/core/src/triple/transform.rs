//! Hypergeometric transformations 2F1(source; z) = theta(z) 2F1(target; phi(z))
//! produced from triples, the two fixed quadratic maps into the E2 equation,
//! and their compositions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rat, BigRat, FieldElement, Ring, RingElement};
use crate::error::{Error, Result};
use crate::poly::{Poly, RationalMap};

use super::{DegreeClass, Family, HpgCase, Triple};

/// Product of powers base^exp with every base equal to 1 at z = 0, so the
/// principal branch near 0 is fixed by theta(0) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalFactor {
    factors: Vec<(RationalMap, BigRat)>,
}

fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

impl RadicalFactor {
    pub fn one() -> Self {
        RadicalFactor { factors: Vec::new() }
    }

    /// Build from (base, exponent) pairs. Each base is rescaled to equal 1 at
    /// z = 0; a base vanishing or blowing up there is rejected.
    pub fn new(factors: Vec<(RationalMap, BigRat)>) -> Result<Self> {
        let mut out = RadicalFactor::one();
        for (base, exp) in factors {
            out.push(base, exp)?;
        }
        Ok(out)
    }

    fn push(&mut self, base: RationalMap, exp: BigRat) -> Result<()> {
        if exp.is_zero() || base.is_constant() {
            return Ok(());
        }
        let at0 = base
            .eval(&FieldElement::zero(base.ring()))
            .filter(|v| !v.is_zero())
            .ok_or_else(|| Error::Domain("radical base must be finite and nonzero at 0".into()))?;
        let base = base.scale(&at0.inv()?);
        if let Some(slot) = self.factors.iter_mut().find(|(b, _)| *b == base) {
            slot.1 += exp;
        } else {
            self.factors.push((base, exp));
        }
        self.factors.retain(|(_, e)| !e.is_zero());
        Ok(())
    }

    pub fn factors(&self) -> &[(RationalMap, BigRat)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &RadicalFactor) -> Result<RadicalFactor> {
        let mut out = self.clone();
        for (b, e) in &other.factors {
            out.push(b.clone(), e.clone())?;
        }
        Ok(out)
    }

    /// theta(inner(z)); needs inner(0) = 0.
    pub fn compose(&self, inner: &RationalMap) -> Result<RadicalFactor> {
        let mut out = RadicalFactor::one();
        for (b, e) in &self.factors {
            out.push(b.compose(inner)?, e.clone())?;
        }
        Ok(out)
    }

    /// Least common denominator L of the exponents and the rational map theta^L.
    pub fn power_map(&self, ring: Ring) -> Result<(u32, RationalMap)> {
        let l = self.factors.iter().fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));
        let l32 = l.to_u32().ok_or_else(|| Error::Domain("exponent denominator too large".into()))?;
        let mut acc = RationalMap::from_poly(Poly::one(ring));
        for (b, e) in &self.factors {
            let k = (e * BigRat::from_integer(l.clone())).to_integer();
            let kk = k.abs().to_u32().ok_or_else(|| Error::Domain("exponent too large".into()))?;
            let term = if k.is_negative() { b.inv()?.pow(kk) } else { b.pow(kk) };
            acc = &acc * &term;
        }
        Ok((l32, acc))
    }

    /// Equality as functions near 0: both equal 1 there, so comparing
    /// L-th powers suffices.
    pub fn same_function(&self, other: &RadicalFactor, ring: Ring) -> Result<bool> {
        let (l1, m1) = self.power_map(ring)?;
        let (l2, m2) = other.power_map(ring)?;
        let l = l1.lcm(&l2);
        Ok(m1.pow(l / l1) == m2.pow(l / l2))
    }

    /// Value at z by principal branches, in double precision.
    pub fn eval_c64(&self, z: (f64, f64)) -> Option<(f64, f64)> {
        let mut acc = (1.0, 0.0);
        for (b, e) in &self.factors {
            let v = eval_map_c64(b, z)?;
            let e = crate::arith::rat_to_f64(e);
            let (r, t) = ((v.0 * v.0 + v.1 * v.1).sqrt(), v.1.atan2(v.0));
            if r == 0.0 {
                return None;
            }
            let rr = r.powf(e);
            let p = (rr * (e * t).cos(), rr * (e * t).sin());
            acc = (acc.0 * p.0 - acc.1 * p.1, acc.0 * p.1 + acc.1 * p.0);
        }
        Some(acc)
    }

    pub fn to_text(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(b, e)| {
                if e.is_one() {
                    format!("({})", b.to_text())
                } else {
                    format!("({})^({})", b.to_text(), format_rat(e))
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }

    pub fn to_latex(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(b, e)| {
                let base = map_latex(b);
                if e.is_one() {
                    format!("\\left({base}\\right)")
                } else {
                    format!("\\left({base}\\right)^{{{}}}", format_rat(e))
                }
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Display for RadicalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Complex value of a polynomial at z, in double precision.
pub fn eval_poly_c64(p: &Poly, z: (f64, f64)) -> (f64, f64) {
    let mut acc = (0.0, 0.0);
    for c in p.coeffs().iter().rev() {
        let cc = c.to_c64();
        acc = (acc.0 * z.0 - acc.1 * z.1 + cc.0, acc.0 * z.1 + acc.1 * z.0 + cc.1);
    }
    acc
}

pub fn eval_map_c64(m: &RationalMap, z: (f64, f64)) -> Option<(f64, f64)> {
    let n = eval_poly_c64(m.num(), z);
    let d = eval_poly_c64(m.den(), z);
    let dd = d.0 * d.0 + d.1 * d.1;
    if dd == 0.0 {
        return None;
    }
    Some(((n.0 * d.0 + n.1 * d.1) / dd, (n.1 * d.0 - n.0 * d.1) / dd))
}

fn map_latex(m: &RationalMap) -> String {
    if m.den().is_one() {
        m.num().to_latex()
    } else {
        format!("\\frac{{{}}}{{{}}}", m.num().to_latex(), m.den().to_latex())
    }
}

/// 2F1(source; z) = theta(z) * 2F1(target; phi(z)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    pub source: HpgCase,
    pub target: HpgCase,
    pub phi: RationalMap,
    pub theta: RadicalFactor,
    /// Lattice index for isogeny maps; `None` for the fixed quadratic maps
    /// and compositions.
    pub u: Option<RingElement>,
    pub family: Option<Family>,
}

impl Transformation {
    pub fn degree(&self) -> usize {
        self.phi.degree()
    }

    pub fn ring(&self) -> Ring {
        self.phi.ring()
    }

    /// Whether theta agrees with another radical factor as a function near 0.
    pub fn same_theta(&self, other: &RadicalFactor) -> Result<bool> {
        self.theta.same_function(other, self.ring())
    }

    pub fn to_latex(&self) -> String {
        let f = |c: HpgCase, arg: &str| {
            let (a, b, cc) = c.params();
            format!(
                "{{}}_2F_1\\left(\\left.\\begin{{matrix}}{},\\,{}\\\\{}\\end{{matrix}}\\right|\\,{}\\right)",
                latex_rat(&a),
                latex_rat(&b),
                latex_rat(&cc),
                arg
            )
        };
        let theta = if self.theta.is_one() { String::new() } else { self.theta.to_latex() };
        format!("{} = {}\\,{}", f(self.source, "z"), theta, f(self.target, &map_latex(&self.phi)))
    }
}

fn latex_rat(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2F1[{}](z) = {} * 2F1[{}]({})", self.source.name(), self.theta, self.target.name(), self.phi)
    }
}

/// The pull-back transformation carried by a verified triple.
pub fn to_transformation(t: &Triple) -> Result<Transformation> {
    t.check()?;
    let ring = t.family.ring();
    let z = Poly::z(ring);
    let l = Poly::one_minus_z(ring);
    let u = t.u.to_field();
    let map = |n: Poly, d: Poly| RationalMap::new(n, d);
    let ff = |n: &[(Poly, u32)], d: &[(Poly, u32)]| RationalMap::from_factors(ring, n, d);
    use DegreeClass::*;
    let (phi, theta) = match t.class {
        C4n1 | C4n2 | C4n => {
            let ratio = map(t.p.clone(), t.q.scale(&u))?;
            let (phi, extra) = match t.class {
                C4n1 => (ff(&[(z, 1), (t.p.clone(), 4)], &[(t.q.clone(), 4)])?, None),
                C4n2 => (ff(&[(z, 1), (t.p.clone(), 4)], &[(l.clone(), 2), (t.q.clone(), 4)])?, Some(rat(-1, 2))),
                _ => (ff(&[(z, 1), (l.clone(), 2), (t.p.clone(), 4)], &[(t.q.clone(), 4)])?, Some(rat(1, 2))),
            };
            let mut parts = vec![(ratio, BigRat::one())];
            if let Some(e) = extra {
                parts.push((RationalMap::from_poly(l.clone()), e));
            }
            (phi, RadicalFactor::new(parts)?)
        }
        Odd1 | Odd3 | Even4 | Even0 => {
            let ratio = map(t.q.scale(&(&u * &u)), t.p.pow(2))?;
            let mut parts = vec![(ratio, rat(-1, 2))];
            let phi = if t.class.is_odd() {
                ff(&[(z, 1), (t.p.clone(), 6)], &[(t.q.clone(), 3)])?
            } else {
                parts.push((RationalMap::from_poly(l.clone()), rat(1, 2)));
                ff(&[(z, 1), (l.clone(), 3), (t.p.clone(), 6)], &[(t.q.clone(), 3)])?
            };
            (phi, RadicalFactor::new(parts)?)
        }
        C3n1 | C3n => {
            let ratio = map(t.p.clone(), t.q.scale(&t.p.at_zero()))?;
            let mut parts = vec![(ratio, BigRat::one())];
            let phi = if t.class == C3n1 {
                ff(&[(z, 1), (t.p.clone(), 3)], &[(t.q.clone(), 3)])?
            } else {
                parts.push((RationalMap::from_poly(l.clone()), rat(1, 3)));
                ff(&[(z, 1), (-&l, 1), (t.p.clone(), 3)], &[(t.q.clone(), 3)])?
            };
            (phi, RadicalFactor::new(parts)?)
        }
    };
    let case = t.family.case();
    Ok(Transformation { source: case, target: case, phi, theta, u: Some(t.u.clone()), family: Some(t.family) })
}

/// The fixed quadratic maps into the (1/2, 1/3, 1/6) equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossKind {
    /// (1/3, 1/3, 1/3) -> (1/2, 1/3, 1/6): phi = z^2/(4(z-1)), theta = (1-z)^(-1/6).
    E3ToE2,
    /// (1/6, 2/3, 1/6) -> (1/2, 1/3, 1/6): phi = -4z/(z-1)^2, theta = (1-z)^(-1/3).
    HyperToE2,
}

impl std::str::FromStr for CrossKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "e3_to_e2" | "e3e2" => Ok(CrossKind::E3ToE2),
            "hyper_to_e2" | "hypere2" => Ok(CrossKind::HyperToE2),
            _ => Err(Error::Parse { what: "quadratic map", input: s.to_string() }),
        }
    }
}

pub fn quadratic_cross(kind: CrossKind) -> Transformation {
    let ring = Ring::Eisenstein;
    let l = RationalMap::from_poly(Poly::one_minus_z(ring));
    let (source, phi, exp) = match kind {
        CrossKind::E3ToE2 => (
            HpgCase::E3,
            RationalMap::new(Poly::from_ints(ring, &[0, 0, 1]), Poly::from_ints(ring, &[-4, 4])),
            rat(-1, 6),
        ),
        CrossKind::HyperToE2 => (
            HpgCase::Hyper,
            RationalMap::new(Poly::from_ints(ring, &[0, -4]), Poly::from_ints(ring, &[1, -2, 1])),
            rat(-1, 3),
        ),
    };
    Transformation {
        source,
        target: HpgCase::E2,
        phi: phi.expect("nonzero denominator"),
        theta: RadicalFactor::new(vec![(l, exp)]).expect("1 - z is 1 at 0"),
        u: None,
        family: None,
    }
}

/// outer o inner: phi = outer.phi(inner.phi), theta = outer.theta(inner.phi) * inner.theta.
pub fn compose_transformations(outer: &Transformation, inner: &Transformation) -> Result<Transformation> {
    if inner.target.exponents() != outer.source.exponents() {
        return Err(Error::IncompatibleExponents(format!(
            "inner lands on {} but outer starts from {}",
            inner.target.exponents_text(),
            outer.source.exponents_text()
        )));
    }
    if inner.ring() != outer.ring() {
        return Err(Error::RingMismatch("composition".into()));
    }
    let phi = outer.phi.compose(&inner.phi)?;
    let theta = outer.theta.compose(&inner.phi)?.mul(&inner.theta)?;
    let (u, family) = if inner.u.is_none() && inner.family.is_none() {
        (outer.u.clone(), outer.family)
    } else if outer.u.is_none() && outer.family.is_none() {
        (inner.u.clone(), inner.family)
    } else {
        (None, None)
    };
    Ok(Transformation { source: inner.source, target: outer.target, phi, theta, u, family })
}

/// Projective check of R^2 = (1 - z) Q^3 - z^2 P^6 with degrees (n, 2n, 3n+1):
/// some nonzero constants a, b give R^2 = a (1 - z) Q^3 - b z^2 P^6 exactly.
/// Over Q(w) the constants cannot always be absorbed (that needs cube roots
/// of 2), so scale is left free.
pub fn verify_cross_identity(p: &Poly, q: &Poly, r: &Poly) -> bool {
    let ring = p.ring();
    if q.ring() != ring || r.ring() != ring || p.is_zero() || q.is_zero() || r.is_zero() {
        return false;
    }
    let n = p.deg0();
    if q.deg0() != 2 * n || r.deg0() != 3 * n + 1 {
        return false;
    }
    let a_part = &Poly::one_minus_z(ring) * &q.pow(3);
    let b_part = &Poly::z(ring).pow(2) * &p.pow(6);
    let r2 = r.pow(2);
    // constant terms fix a (b_part vanishes at 0), the z^2-coefficient of b_part then fixes b
    let q0 = a_part.at_zero();
    if q0.is_zero() {
        return false;
    }
    let Ok(alpha) = r2.at_zero().try_div(&q0) else { return false };
    let residual = &a_part.scale(&alpha) - &r2;
    let lead_b = b_part.lead();
    let Some(k) = b_part.degree() else { return false };
    let Ok(beta) = residual.coeff(k).try_div(&lead_b) else { return false };
    if alpha.is_zero() || beta.is_zero() {
        return false;
    }
    (&residual - &b_part.scale(&beta)).is_zero()
}

/// Recover (P, Q, R) from a composed degree 6n+2 map
/// phi = c z^2 P^6 / ((z - 1) Q^3) with 1 - phi proportional to R^2/((z-1) Q^3).
/// Returned polynomials are monic.
pub fn extract_cross_triple(phi: &RationalMap) -> Option<(Poly, Poly, Poly)> {
    let ring = phi.ring();
    let z2 = Poly::z(ring).pow(2);
    let zm1 = Poly::from_ints(ring, &[-1, 1]);
    let p6 = phi.num().exact_div(&z2).ok()?;
    let p = p6.monic_root(6)?;
    let q3 = phi.den().exact_div(&zm1).ok()?;
    let q = q3.monic_root(3)?;
    let one_minus = RationalMap::from_poly(Poly::one(ring)).try_sub(phi).ok()?;
    let r = one_minus.num().monic_root(2)?;
    Some((p, q, r))
}

/// The quadratic map followed by the E2 transformation of u: degree 2 N(u).
pub fn cross_composition(kind: CrossKind, u: &RingElement) -> Result<Transformation> {
    let iso = to_transformation(&super::generate(Family::E2, u)?)?;
    compose_transformations(&iso, &quadratic_cross(kind))
}

/// Every composed map of total degree d, one per canonical u with
/// 2 N(u) = d. Empty when no Eisenstein integer has norm d/2, which is the
/// case for every d = 6n + 4 since norms are 0 or 1 mod 3.
pub fn cross_maps_of_degree(kind: CrossKind, d: u64) -> Result<Vec<Transformation>> {
    if d % 2 == 1 {
        return Ok(Vec::new());
    }
    crate::arith::elements_of_norm(d / 2, Ring::Eisenstein).iter().map(|u| cross_composition(kind, u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_have_the_cross_shape() {
        let id = cross_composition(CrossKind::E3ToE2, &RingElement::one(Ring::Eisenstein)).unwrap();
        assert_eq!(id.phi, quadratic_cross(CrossKind::E3ToE2).phi);
        for k in [1, 4, 7] {
            for t in cross_maps_of_degree(CrossKind::E3ToE2, 2 * k).unwrap() {
                assert_eq!(t.degree() as u64, 2 * k);
                assert_eq!((t.source, t.target), (HpgCase::E3, HpgCase::E2));
                let (p, q, r) = extract_cross_triple(&t.phi).expect("6n+2 shape");
                assert!(verify_cross_identity(&p, &q, &r));
                assert!(!verify_cross_identity(&p, &q, &(&r + &Poly::one(Ring::Eisenstein))));
            }
        }
        let t = cross_maps_of_degree(CrossKind::HyperToE2, 6).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].source, HpgCase::Hyper);
    }

    #[test]
    fn no_composed_map_of_degree_6n_plus_4() {
        for d in (4..=40).step_by(6) {
            assert!(cross_maps_of_degree(CrossKind::E3ToE2, d).unwrap().is_empty());
        }
        assert!(!cross_maps_of_degree(CrossKind::E3ToE2, 6).unwrap().is_empty());
    }

    #[test]
    fn incompatible_compositions_are_rejected() {
        let q = quadratic_cross(CrossKind::E3ToE2);
        assert!(compose_transformations(&q, &q).is_err());
    }
}
