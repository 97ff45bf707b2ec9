//! Isogenies of y^2 = x^3 - x, y^2 = x^3 - 1 and X^3 + Y^3 = 1 computed as
//! exact maps in the function field, by repeated point addition.
//!
//! This is deliberately independent of the triple recursions: the only
//! shared pieces are the field arithmetic and the lattice walk order.

use std::fmt;

use crate::arith::{units, FieldElement, Ring, RingElement};
use crate::error::{Error, Result};
use crate::poly::{Poly, RationalMap};
use crate::triple::{walk_step, Family};

/// The three model curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveId {
    /// y^2 = x^3 - x, CM by Z[i].
    E1,
    /// y^2 = x^3 - 1, CM by Z[w].
    E2,
    /// X^3 + Y^3 = 1, CM by Z[w], neutral point (1 : -1 : 0).
    E3,
}

impl CurveId {
    pub const ALL: [CurveId; 3] = [CurveId::E1, CurveId::E2, CurveId::E3];

    pub fn ring(self) -> Ring {
        self.family().ring()
    }

    pub fn family(self) -> Family {
        match self {
            CurveId::E1 => Family::E1,
            CurveId::E2 => Family::E2,
            CurveId::E3 => Family::E3,
        }
    }

    pub fn from_family(f: Family) -> Self {
        match f {
            Family::E1 => CurveId::E1,
            Family::E2 => CurveId::E2,
            Family::E3 => CurveId::E3,
        }
    }

    /// Degree n of the function field over Q(x): y^n = t(x).
    fn y_degree(self) -> usize {
        match self {
            CurveId::E3 => 3,
            _ => 2,
        }
    }

    /// t(x) with y^n = t(x).
    fn t(self) -> RationalMap {
        let ring = self.ring();
        let p = match self {
            CurveId::E1 => Poly::from_ints(ring, &[0, -1, 0, 1]),
            CurveId::E2 => Poly::from_ints(ring, &[-1, 0, 0, 1]),
            CurveId::E3 => Poly::from_ints(ring, &[1, 0, 0, -1]),
        };
        RationalMap::from_poly(p)
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family().name())
    }
}

fn zero_map(ring: Ring) -> RationalMap {
    RationalMap::from_poly(Poly::zero(ring))
}

/// c_0 + c_1 y (+ c_2 y^2) with c_k in Q(x), reduced by y^n = t(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FfElem {
    curve: CurveId,
    c: Vec<RationalMap>,
}

impl FfElem {
    pub fn from_coeffs(curve: CurveId, mut c: Vec<RationalMap>) -> Self {
        let n = curve.y_degree();
        c.resize(n, zero_map(curve.ring()));
        FfElem { curve, c }
    }

    pub fn zero(curve: CurveId) -> Self {
        Self::from_coeffs(curve, Vec::new())
    }

    pub fn from_map(curve: CurveId, m: RationalMap) -> Self {
        Self::from_coeffs(curve, vec![m])
    }

    pub fn constant(curve: CurveId, c: FieldElement) -> Self {
        Self::from_map(curve, RationalMap::constant(c))
    }

    /// The coordinate function x (or X).
    pub fn x(curve: CurveId) -> Self {
        Self::from_map(curve, RationalMap::identity(curve.ring()))
    }

    /// The coordinate function y (or Y).
    pub fn y(curve: CurveId) -> Self {
        let ring = curve.ring();
        let mut c = vec![zero_map(ring); curve.y_degree()];
        c[1] = RationalMap::from_poly(Poly::one(ring));
        FfElem { curve, c }
    }

    pub fn coeff(&self, k: usize) -> &RationalMap {
        &self.c[k]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|m| m.is_zero())
    }

    /// Some(k) when only the y^k coefficient is nonzero.
    fn single(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.c.len()).filter(|&k| !self.c[k].is_zero()).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    /// The x-only part, when the element has no y terms.
    pub fn as_map(&self) -> Option<&RationalMap> {
        self.c[1..].iter().all(|m| m.is_zero()).then(|| &self.c[0])
    }

    pub fn add(&self, o: &FfElem) -> FfElem {
        FfElem { curve: self.curve, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &FfElem) -> FfElem {
        FfElem { curve: self.curve, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> FfElem {
        FfElem { curve: self.curve, c: self.c.iter().map(|a| a.neg_map()).collect() }
    }

    pub fn scale(&self, s: &FieldElement) -> FfElem {
        FfElem { curve: self.curve, c: self.c.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn mul(&self, o: &FfElem) -> FfElem {
        let n = self.c.len();
        let ring = self.curve.ring();
        let mut acc = vec![zero_map(ring); 2 * n - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] = &acc[i + j] + &(a * b);
            }
        }
        let t = self.curve.t();
        for k in (n..2 * n - 1).rev() {
            let hi = std::mem::replace(&mut acc[k], zero_map(ring));
            if !hi.is_zero() {
                acc[k - n] = &acc[k - n] + &(&hi * &t);
            }
        }
        acc.truncate(n);
        FfElem { curve: self.curve, c: acc }
    }

    pub fn inv(&self) -> Result<FfElem> {
        let ring = self.curve.ring();
        let n = self.c.len();
        let t = self.curve.t();
        if let Some(k) = self.single() {
            // (c y^k)^-1 = c^-1 t^-1 y^(n-k)
            let mut c = vec![zero_map(ring); n];
            if k == 0 {
                c[0] = self.c[0].inv()?;
            } else {
                c[n - k] = (&self.c[k] * &t).inv()?;
            }
            return Ok(FfElem { curve: self.curve, c });
        }
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if n == 2 {
            let (a, b) = (&self.c[0], &self.c[1]);
            let norm = &(a * a) - &(&(b * b) * &t);
            let ni = norm.inv()?;
            return Ok(FfElem { curve: self.curve, c: vec![a * &ni, (b * &ni).neg_map()] });
        }
        // cubic: the adjugate of multiplication by a + b y + c y^2
        let (a, b, c) = (&self.c[0], &self.c[1], &self.c[2]);
        let bc = b * c;
        let adj0 = &(a * a) - &(&bc * &t);
        let adj1 = &(&(c * c) * &t) - &(a * b);
        let adj2 = &(b * b) - &(a * c);
        let norm = &(a * &adj0) + &(&(&(b * &adj2) + &(c * &adj1)) * &t);
        let ni = norm.inv()?;
        Ok(FfElem { curve: self.curve, c: vec![&adj0 * &ni, &adj1 * &ni, &adj2 * &ni] })
    }

    pub fn div(&self, o: &FfElem) -> Result<FfElem> {
        Ok(self.mul(&o.inv()?))
    }

    /// f(self) for a rational function f of x.
    pub fn substitute_into(&self, f: &RationalMap) -> Result<FfElem> {
        let horner = |p: &Poly| {
            let mut acc = FfElem::zero(self.curve);
            for c in p.coeffs().iter().rev() {
                acc = acc.mul(self).add(&FfElem::constant(self.curve, c.clone()));
            }
            acc
        };
        horner(f.num()).div(&horner(f.den()))
    }
}

impl fmt::Display for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("({c})*y"),
                _ => format!("({c})*y^{k}"),
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The pair of coordinate maps of an isogeny [u].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyMap {
    pub curve: CurveId,
    pub u: RingElement,
    pub phi: FfElem,
    pub psi: FfElem,
}

/// A point of the curve over its own function field: an isogeny or the
/// zero map onto the neutral point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoPoint {
    Origin(CurveId),
    Map(IsogenyMap),
}

impl IsoPoint {
    pub fn map(&self) -> Option<&IsogenyMap> {
        match self {
            IsoPoint::Map(m) => Some(m),
            IsoPoint::Origin(_) => None,
        }
    }
}

impl IsogenyMap {
    pub fn identity(curve: CurveId) -> Self {
        IsogenyMap { curve, u: RingElement::one(curve.ring()), phi: FfElem::x(curve), psi: FfElem::y(curve) }
    }

    /// Residual of the curve equation at (phi, psi); zero for a valid map.
    pub fn curve_residual(&self) -> FfElem {
        let (p, q) = (&self.phi, &self.psi);
        match self.curve {
            CurveId::E1 => q.mul(q).sub(&p.mul(p).mul(p).sub(p)),
            CurveId::E2 => {
                let one = FfElem::constant(self.curve, FieldElement::one(self.curve.ring()));
                q.mul(q).sub(&p.mul(p).mul(p).sub(&one))
            }
            CurveId::E3 => {
                let one = FfElem::constant(self.curve, FieldElement::one(self.curve.ring()));
                p.mul(p).mul(p).add(&q.mul(q).mul(q)).sub(&one)
            }
        }
    }

    pub fn on_curve(&self) -> bool {
        self.curve_residual().is_zero()
    }

    /// Post-compose with the automorphism [e] for a unit e.
    pub fn apply_unit(&self, e: &RingElement) -> Result<IsogenyMap> {
        let (k, negate) = unit_parts(self.curve.ring(), e)?;
        let ring = self.curve.ring();
        let u = &self.u * e;
        let (phi, psi) = match self.curve {
            CurveId::E1 => {
                // [i]: (x, y) -> (-x, i y)
                let i = FieldElement::gen(ring);
                let sx = FieldElement::from_int(ring, if k % 2 == 0 { 1 } else { -1 });
                (self.phi.scale(&sx), self.psi.scale(&i.pow(k)))
            }
            CurveId::E2 => {
                // [w]: (x, y) -> (w x, y), [-1]: (x, y) -> (x, -y)
                let w = FieldElement::gen(ring).pow(k);
                let sy = FieldElement::from_int(ring, if negate { -1 } else { 1 });
                (self.phi.scale(&w), self.psi.scale(&sy))
            }
            CurveId::E3 => {
                // [w]: (X, Y) -> (w^-1 X, w^-1 Y), [-1]: (X, Y) -> (Y, X)
                let w = FieldElement::gen(ring).pow((3 - k % 3) % 3);
                let (a, b) = (self.phi.scale(&w), self.psi.scale(&w));
                if negate {
                    (b, a)
                } else {
                    (a, b)
                }
            }
        };
        Ok(IsogenyMap { curve: self.curve, u, phi, psi })
    }

    /// self o other as maps of the curve.
    pub fn compose(&self, other: &IsogenyMap) -> Result<IsogenyMap> {
        if self.curve != other.curve {
            return Err(Error::RingMismatch("composition across curves".into()));
        }
        let subst = |e: &FfElem| -> Result<FfElem> {
            let mut acc = FfElem::zero(self.curve);
            let mut ypow = FfElem::constant(self.curve, FieldElement::one(self.curve.ring()));
            for k in 0..e.c.len() {
                if !e.c[k].is_zero() {
                    acc = acc.add(&other.phi.substitute_into(&e.c[k])?.mul(&ypow));
                }
                ypow = ypow.mul(&other.psi);
            }
            Ok(acc)
        };
        Ok(IsogenyMap { curve: self.curve, u: &self.u * &other.u, phi: subst(&self.phi)?, psi: subst(&self.psi)? })
    }
}

/// e = i^k on Z[i]; e = (-1)^negate w^k on Z[w].
fn unit_parts(ring: Ring, e: &RingElement) -> Result<(u32, bool)> {
    let pos = units(ring)
        .iter()
        .position(|x| x == e)
        .ok_or_else(|| Error::NonUnit(e.to_string()))? as u32;
    Ok(match ring {
        Ring::Gauss => (pos, false),
        // units are powers of 1 + w = -w^2
        Ring::Eisenstein => ((2 * pos) % 3, pos % 2 == 1),
    })
}

/// The automorphism [e] for a unit e.
pub fn unit_map(curve: CurveId, e: &RingElement) -> Result<IsogenyMap> {
    IsogenyMap::identity(curve).apply_unit(e)
}

/// Sum of two points in the group of the curve over its function field.
pub fn point_add(p1: &IsoPoint, p2: &IsoPoint) -> Result<IsoPoint> {
    let (a, b) = match (p1, p2) {
        (IsoPoint::Origin(_), q) | (q, IsoPoint::Origin(_)) => return Ok(q.clone()),
        (IsoPoint::Map(a), IsoPoint::Map(b)) => (a, b),
    };
    if a.curve != b.curve {
        return Err(Error::RingMismatch("points on different curves".into()));
    }
    let curve = a.curve;
    let u = &a.u + &b.u;
    match curve {
        CurveId::E1 | CurveId::E2 => {
            let dx = a.phi.sub(&b.phi);
            let lambda = if !dx.is_zero() {
                a.psi.sub(&b.psi).div(&dx)?
            } else {
                let sy = a.psi.add(&b.psi);
                if sy.is_zero() {
                    return Ok(IsoPoint::Origin(curve));
                }
                // tangent form: (x1^2 + x1 x2 + x2^2 + A)/(y1 + y2)
                let mut num = a.phi.mul(&a.phi).add(&a.phi.mul(&b.phi)).add(&b.phi.mul(&b.phi));
                if curve == CurveId::E1 {
                    num = num.sub(&FfElem::constant(curve, FieldElement::one(curve.ring())));
                }
                num.div(&sy)?
            };
            let x3 = lambda.mul(&lambda).sub(&a.phi).sub(&b.phi);
            let y3 = lambda.mul(&a.phi.sub(&x3)).sub(&a.psi);
            if u.is_zero() {
                return Ok(IsoPoint::Origin(curve));
            }
            Ok(IsoPoint::Map(IsogenyMap { curve, u, phi: x3, psi: y3 }))
        }
        CurveId::E3 => {
            if u.is_zero() {
                return Ok(IsoPoint::Origin(curve));
            }
            let d = a.phi.mul(&a.psi).sub(&b.phi.mul(&b.psi));
            if d.is_zero() {
                if a.phi == b.phi && a.psi == b.psi {
                    // doubling by 2 = 1 - w^2 - w, where the chord law is regular
                    let ring = curve.ring();
                    let w = RingElement::gen(ring);
                    let s = point_add(p1, &IsoPoint::Map(a.apply_unit(&-(&w * &w))?))?;
                    return point_add(&s, &IsoPoint::Map(a.apply_unit(&-&w)?));
                }
                if a.phi == b.psi && a.psi == b.phi {
                    return Ok(IsoPoint::Origin(curve));
                }
                return Err(Error::Degenerate("chord law degenerates".into()));
            }
            let num_f = a.phi.mul(&b.psi.mul(&b.psi)).sub(&b.phi.mul(&a.psi.mul(&a.psi)));
            let num_g = b.phi.mul(&b.phi).mul(&a.psi).sub(&a.phi.mul(&a.phi).mul(&b.psi));
            let di = d.inv()?;
            Ok(IsoPoint::Map(IsogenyMap { curve, u, phi: num_f.mul(&di), psi: num_g.mul(&di) }))
        }
    }
}

/// The isogeny [u], by the Euclidean walk from unit automorphisms.
pub fn isogeny(curve: CurveId, u: &RingElement) -> Result<IsogenyMap> {
    if u.ring() != curve.ring() {
        return Err(Error::RingMismatch(format!("{} index on {curve}", u.ring().name())));
    }
    if u.is_zero() {
        return Err(Error::ZeroElement("isogeny"));
    }
    let mut chain = Vec::new();
    let mut cur = u.clone();
    while !cur.is_unit() {
        let e = walk_step(&cur, false);
        chain.push(e.clone());
        cur = &cur - &e;
    }
    let mut acc = IsoPoint::Map(unit_map(curve, &cur)?);
    for e in chain.into_iter().rev() {
        acc = point_add(&acc, &IsoPoint::Map(unit_map(curve, &e)?))?;
    }
    match acc {
        IsoPoint::Map(m) => Ok(m),
        IsoPoint::Origin(_) => Err(Error::Degenerate(format!("walk for {u} reached the origin"))),
    }
}

/// The structural shape an isogeny x-map is expected to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapForm {
    /// x -> x mu(x^2) on E1, x -> x mu(x^3) on E2, (X mu, Y nu) on E3.
    XMu,
    /// (Y nu, X mu) on E3.
    YNu,
    /// (mu Y^2/X, nu X^2/Y) on E3.
    Eta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub form: MapForm,
    /// mu(s) with s = x^2 (E1) or s = x^3 (E2, E3).
    pub mu: RationalMap,
    /// lim mu(s) as s -> infinity.
    pub mu0: FieldElement,
}

/// Limit of a rational map at infinity, if finite.
pub fn limit_at_infinity(m: &RationalMap) -> Option<FieldElement> {
    let (dn, dd) = (m.num().deg0(), m.den().deg0());
    if m.is_zero() || dn < dd {
        Some(FieldElement::zero(m.ring()))
    } else if dn == dd {
        m.num().lead().try_div(&m.den().lead()).ok()
    } else {
        None
    }
}

/// g(x) = x^shift * f(x^k) for some rational f; returns f.
fn deflate_with_shift(m: &RationalMap, shift: i32, k: usize) -> Option<RationalMap> {
    let ring = m.ring();
    let (num, den) = if shift >= 0 {
        (m.num().clone(), m.den() * &Poly::z(ring).pow(shift as u32))
    } else {
        (m.num() * &Poly::z(ring).pow((-shift) as u32), m.den().clone())
    };
    let r = RationalMap::new(num, den).ok()?;
    let n = r.num().deflate(k)?;
    let d = r.den().deflate(k)?;
    RationalMap::new(n, d).ok()
}

/// Read off the structural form and mu of an isogeny map, checking the
/// limit predicted for its index.
pub fn structural_decompose(m: &IsogenyMap) -> Result<Decomposition> {
    let u = m.u.to_field();
    let bad = |what: &str| Error::Structure(format!("{} [{}]: {what}", m.curve, m.u));
    let (form, mu) = match m.curve {
        CurveId::E1 | CurveId::E2 => {
            let k = if m.curve == CurveId::E1 { 2 } else { 3 };
            let x = m.phi.as_map().ok_or_else(|| bad("x-map involves y"))?;
            (MapForm::XMu, deflate_with_shift(x, 1, k).ok_or_else(|| bad("x-map is not x mu(x^k)"))?)
        }
        CurveId::E3 => {
            let x_shape = |e: &FfElem| e.as_map().and_then(|a| deflate_with_shift(a, 1, 3));
            if let Some(mu) = x_shape(&m.phi) {
                (MapForm::XMu, mu)
            } else if let Some(mu) = x_shape(&m.psi) {
                (MapForm::YNu, mu)
            } else if m.phi.single() == Some(2) {
                // phi = mu(X^3) Y^2 / X
                (MapForm::Eta, deflate_with_shift(m.phi.coeff(2), -1, 3).ok_or_else(|| bad("eta form"))?)
            } else {
                return Err(bad("no known coordinate form"));
            }
        }
    };
    let mu0 = limit_at_infinity(&mu).ok_or_else(|| bad("mu has a pole at infinity"))?;
    let expected = match (m.curve, form) {
        (CurveId::E3, MapForm::YNu) => -u.inv()?,
        (CurveId::E3, _) => u.inv()?,
        _ => (&u * &u).inv()?,
    };
    if mu0 != expected {
        return Err(bad(&format!("limit {mu0}, expected {expected}")));
    }
    Ok(Decomposition { form, mu, mu0 })
}

/// The pull-back argument map z -> phi(z) carried by the isogeny [u]:
/// z' = 1/G(1/z) where the transforming coordinate c satisfies c^k = G(x^k).
pub fn pullback_of(m: &IsogenyMap) -> Result<RationalMap> {
    let ring = m.curve.ring();
    let (coord, k) = match m.curve {
        CurveId::E1 => (&m.phi, 2),
        CurveId::E2 => (&m.phi, 3),
        CurveId::E3 => {
            let form = structural_decompose(m)?.form;
            (if form == MapForm::YNu { &m.psi } else { &m.phi }, 3)
        }
    };
    let mut power = coord.clone();
    for _ in 1..k {
        power = power.mul(coord);
    }
    let g = power.as_map().ok_or_else(|| Error::Structure("power of coordinate keeps y".into()))?;
    let gs = RationalMap::new(
        g.num().deflate(k).ok_or_else(|| Error::Structure("not a function of x^k".into()))?,
        g.den().deflate(k).ok_or_else(|| Error::Structure("not a function of x^k".into()))?,
    )?;
    let recip = RationalMap::new(Poly::one(ring), Poly::z(ring))?;
    gs.compose(&recip)?.inv()
}

/// Independent pull-back map for index u on the curve.
pub fn oracle_pullback(curve: CurveId, u: &RingElement) -> Result<RationalMap> {
    pullback_of(&isogeny(curve, u)?)
}

/// Whether mu has a pole at s = 0, i.e. a 2- or 3-torsion point at x = 0
/// lies in the kernel.
pub fn kernel_pole_at_zero(d: &Decomposition) -> bool {
    d.mu.den().at_zero().is_zero()
}

/// The form the residue of u modulo (1 - w) predicts on E3.
pub fn expected_e3_form(u: &RingElement) -> MapForm {
    match u.residue_mod_sqrt_minus3() {
        1 => MapForm::XMu,
        -1 => MapForm::YNu,
        _ => MapForm::Eta,
    }
}

/// Oracle pull-back against the one derived from the polynomial triple.
#[derive(Clone, Debug)]
pub struct Agreement {
    pub curve: CurveId,
    pub u: RingElement,
    pub oracle: RationalMap,
    pub derived: RationalMap,
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        self.oracle == self.derived
    }
}

pub fn compare_with_triple(curve: CurveId, u: &RingElement) -> Result<Agreement> {
    let oracle = oracle_pullback(curve, u)?;
    let t = crate::triple::generate(curve.family(), u)?;
    let derived = crate::triple::to_transformation(&t)?.phi;
    Ok(Agreement { curve, u: u.clone(), oracle, derived })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gu(s: &str) -> RingElement {
        RingElement::parse(s, Some(Ring::Gauss)).unwrap()
    }

    fn eu(s: &str) -> RingElement {
        RingElement::parse(s, Some(Ring::Eisenstein)).unwrap()
    }

    fn rm(ring: Ring, n: &str, d: &str) -> RationalMap {
        RationalMap::new(Poly::parse(n, ring).unwrap(), Poly::parse(d, ring).unwrap()).unwrap()
    }

    #[test]
    fn printed_e1_isogenies() {
        let c = CurveId::E1;
        let id = IsoPoint::Map(IsogenyMap::identity(c));
        let two = point_add(&id, &id).unwrap();
        let two = two.map().unwrap();
        assert_eq!(two.phi.as_map().unwrap(), &rm(Ring::Gauss, "(z^2+1)^2", "4z(z^2-1)"));
        let i = IsoPoint::Map(unit_map(c, &gu("i")).unwrap());
        let s = point_add(&id, &i).unwrap();
        assert_eq!(s.map().unwrap().phi.as_map().unwrap(), &rm(Ring::Gauss, "z^2-1", "2iz"));
        let m = isogeny(c, &gu("1+2i")).unwrap();
        assert_eq!(m.phi.as_map().unwrap(), &rm(Ring::Gauss, "z(z^2-1-2i)^2", "((1+2i)z^2-1)^2"));
        let i_map = unit_map(c, &gu("i")).unwrap();
        assert_eq!(i_map.phi, FfElem::x(c).neg());
        assert_eq!(i_map.psi, FfElem::y(c).scale(&FieldElement::gen(Ring::Gauss)));
        assert_eq!(point_add(&id, &IsoPoint::Origin(c)).unwrap(), id);
    }

    #[test]
    fn decomposition_of_one_plus_i() {
        let m = isogeny(CurveId::E1, &gu("1+i")).unwrap();
        let d = structural_decompose(&m).unwrap();
        assert_eq!(d.mu, rm(Ring::Gauss, "z-1", "2iz"));
        assert_eq!(d.mu0, FieldElement::parse("-1/2i", Some(Ring::Gauss)).unwrap());
        let id = structural_decompose(&IsogenyMap::identity(CurveId::E2)).unwrap();
        assert!(id.mu.num().is_one() && id.mu.den().is_one());
    }

    #[test]
    fn printed_pullbacks() {
        assert_eq!(oracle_pullback(CurveId::E1, &gu("1+i")).unwrap(), rm(Ring::Gauss, "-4z", "(z-1)^2"));
        assert_eq!(oracle_pullback(CurveId::E2, &eu("1-w")).unwrap(), rm(Ring::Eisenstein, "27z", "(4z-1)^3"));
        assert_eq!(
            oracle_pullback(CurveId::E3, &eu("1-w")).unwrap(),
            rm(Ring::Eisenstein, "3(2w+1)z(z-1)", "(z+w)^3")
        );
    }

    #[test]
    fn maps_stay_on_the_curve() {
        for c in CurveId::ALL {
            for u in crate::arith::canonical_elements_up_to(9, c.ring()) {
                let m = isogeny(c, &u).unwrap();
                assert!(m.on_curve(), "{c} {u}");
                structural_decompose(&m).unwrap();
            }
        }
    }

    #[test]
    fn agreement_with_triples_and_structure() {
        for c in CurveId::ALL {
            for u in crate::arith::canonical_elements_up_to(13, c.ring()) {
                let a = compare_with_triple(c, &u).unwrap();
                assert!(a.agrees(), "{c} {u}: {} vs {}", a.oracle, a.derived);
                assert_eq!(a.oracle.degree() as u64, u.norm_u64());
                let d = structural_decompose(&isogeny(c, &u).unwrap()).unwrap();
                let n = u.norm_u64();
                match c {
                    CurveId::E1 => {
                        assert_eq!(d.mu.degree() as u64, n / 2);
                        assert_eq!(kernel_pole_at_zero(&d), n % 2 == 0, "{u}");
                    }
                    CurveId::E2 => assert_eq!(kernel_pole_at_zero(&d), n % 3 == 0, "{u}"),
                    CurveId::E3 => assert_eq!(d.form, expected_e3_form(&u), "{u}"),
                }
            }
        }
    }

    #[test]
    fn multiplication_composes() {
        let c = CurveId::E1;
        let (a, b) = (gu("1+i"), gu("2-i"));
        let ab = isogeny(c, &a).unwrap().compose(&isogeny(c, &b).unwrap()).unwrap();
        assert_eq!(ab, isogeny(c, &(&a * &b)).unwrap());
        let c = CurveId::E3;
        let (a, b) = (eu("1-w"), eu("2+w"));
        let ab = isogeny(c, &a).unwrap().compose(&isogeny(c, &b).unwrap()).unwrap();
        assert_eq!(ab, isogeny(c, &(&a * &b)).unwrap());
    }

    #[test]
    fn field_inverse_round_trips() {
        for c in CurveId::ALL {
            let x = FfElem::x(c);
            let y = FfElem::y(c);
            let e = x.add(&y).add(&y.mul(&y).scale(&FieldElement::from_int(c.ring(), 3)));
            let one = FfElem::constant(c, FieldElement::one(c.ring()));
            assert_eq!(e.mul(&e.inv().unwrap()), one);
        }
    }
}
