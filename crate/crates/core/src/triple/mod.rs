//! Polynomial triples (P, Q, R) encoding pull-back coverings, their defining
//! identities, and the lattice recursions that build them.
//!
//! Every triple is indexed by a lattice element u and normalised so that
//! (P(0), Q(0), R(0)) = (u, 1, 1) on E1 and E2. On E3 we fix Q(0) = 1 and
//! R(0) = 1 (class 3n+1) or R(0) = -1 (class 3n); P(0) is then u or -u,
//! depending on which coordinate form the isogeny for u takes.

mod e3;
mod transform;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{units, BigRat, FieldElement, Ring, RingElement};
use crate::error::{Error, Result};
use crate::poly::Poly;

pub use e3::{e3_add, e3_generate};
pub use transform::{
    compose_transformations, cross_composition, cross_maps_of_degree, extract_cross_triple, quadratic_cross, to_transformation, verify_cross_identity,
    eval_map_c64, eval_poly_c64, CrossKind, RadicalFactor, Transformation,
};

/// The elliptic curve family, which fixes the ring and the defining identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    E1,
    E2,
    E3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::E1, Family::E2, Family::E3];

    pub fn ring(self) -> Ring {
        match self {
            Family::E1 => Ring::Gauss,
            Family::E2 | Family::E3 => Ring::Eisenstein,
        }
    }

    pub fn case(self) -> HpgCase {
        match self {
            Family::E1 => HpgCase::E1,
            Family::E2 => HpgCase::E2,
            Family::E3 => HpgCase::E3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::E1 => "e1",
            Family::E2 => "e2",
            Family::E3 => "e3",
        }
    }

    /// Degree class of a covering of degree `d`, if such degree can occur.
    pub fn class_for_degree(self, d: u64) -> Option<DegreeClass> {
        use DegreeClass::*;
        match self {
            Family::E1 => match d % 4 {
                1 => Some(C4n1),
                2 => Some(C4n2),
                0 if d > 0 => Some(C4n),
                _ => None,
            },
            Family::E2 => match d % 6 {
                1 => Some(Odd1),
                3 => Some(Odd3),
                4 => Some(Even4),
                0 if d > 0 => Some(Even0),
                _ => None,
            },
            Family::E3 => match d % 3 {
                1 => Some(C3n1),
                0 if d > 0 => Some(C3n),
                _ => None,
            },
        }
    }

    /// Projective weights (P, Q, R) under which the identity is homogeneous.
    fn weights(self) -> (u32, u32, u32) {
        match self {
            Family::E1 => (1, 1, 2),
            Family::E2 => (1, 2, 3),
            Family::E3 => (1, 1, 1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "e1" => Ok(Family::E1),
            "e2" => Ok(Family::E2),
            "e3" => Ok(Family::E3),
            _ => Err(Error::Parse { what: "family", input: s.to_string() }),
        }
    }
}

/// A Gauss hypergeometric equation with elliptic (or hyperelliptic) local
/// exponent differences, identified by its standard parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HpgCase {
    /// 2F1(1/2, 1/4; 5/4), exponent differences (1/4, 1/2, 1/4) at (0, 1, inf).
    E1,
    /// 2F1(1/2, 1/6; 7/6), exponent differences (1/6, 1/2, 1/3).
    E2,
    /// 2F1(1/3, 2/3; 4/3), exponent differences (1/3, 1/3, 1/3).
    E3,
    /// 2F1(1/3, 1/6; 7/6), exponent differences (1/6, 2/3, 1/6).
    Hyper,
}

fn q(n: i64, d: i64) -> BigRat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl HpgCase {
    /// (a, b, c) of the 2F1 whose argument is the covering coordinate.
    pub fn params(self) -> (BigRat, BigRat, BigRat) {
        match self {
            HpgCase::E1 => (q(1, 2), q(1, 4), q(5, 4)),
            HpgCase::E2 => (q(1, 2), q(1, 6), q(7, 6)),
            HpgCase::E3 => (q(1, 3), q(2, 3), q(4, 3)),
            HpgCase::Hyper => (q(1, 3), q(1, 6), q(7, 6)),
        }
    }

    /// Local exponent differences at z = 0, 1, infinity.
    pub fn exponents(self) -> [BigRat; 3] {
        let (a, b, c) = self.params();
        let one = BigRat::from_integer(1.into());
        let abs = |x: BigRat| if x < BigRat::from_integer(0.into()) { -x } else { x };
        [abs(&one - &c), abs(&c - &a - &b), abs(&b - &a)]
    }

    pub fn name(self) -> &'static str {
        match self {
            HpgCase::E1 => "e1",
            HpgCase::E2 => "e2",
            HpgCase::E3 => "e3",
            HpgCase::Hyper => "hyper",
        }
    }

    pub fn exponents_text(self) -> String {
        let e = self.exponents();
        format!("({},{},{})", e[0], e[1], e[2])
    }
}

/// Residue class of the covering degree; fixes the identity and degree table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DegreeClass {
    /// E1, d = 4n+1.
    C4n1,
    /// E1, d = 4n+2.
    C4n2,
    /// E1, d = 4n.
    C4n,
    /// E2, d = 6n+1.
    Odd1,
    /// E2, d = 6n+3.
    Odd3,
    /// E2, d = 6n+4.
    Even4,
    /// E2, d = 6n.
    Even0,
    /// E3, d = 3n+1.
    C3n1,
    /// E3, d = 3n.
    C3n,
}

impl DegreeClass {
    pub fn family(self) -> Family {
        use DegreeClass::*;
        match self {
            C4n1 | C4n2 | C4n => Family::E1,
            Odd1 | Odd3 | Even4 | Even0 => Family::E2,
            C3n1 | C3n => Family::E3,
        }
    }

    pub fn name(self) -> &'static str {
        use DegreeClass::*;
        match self {
            C4n1 => "4n+1",
            C4n2 => "4n+2",
            C4n => "4n",
            Odd1 => "6n+1",
            Odd3 => "6n+3",
            Even4 => "6n+4",
            Even0 => "6n",
            C3n1 => "3n+1",
            C3n => "3n",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        use DegreeClass::*;
        Ok(match s.trim() {
            "4n+1" => C4n1,
            "4n+2" => C4n2,
            "4n" => C4n,
            "6n+1" => Odd1,
            "6n+3" => Odd3,
            "6n+4" => Even4,
            "6n" => Even0,
            "3n+1" => C3n1,
            "3n" => C3n,
            _ => return Err(Error::Parse { what: "degree class", input: s.to_string() }),
        })
    }

    /// E1 odd degree or E2 odd degree.
    pub fn is_odd(self) -> bool {
        matches!(self, DegreeClass::C4n1 | DegreeClass::Odd1 | DegreeClass::Odd3)
    }

    /// Exact degrees of (P, Q, R) for covering degree `d`, or `None` if `d`
    /// is not in this class.
    pub fn expected_degrees(self, d: u64) -> Option<(usize, usize, usize)> {
        use DegreeClass::*;
        if self.family().class_for_degree(d) != Some(self) {
            return None;
        }
        let d = d as usize;
        Some(match self {
            C4n1 => {
                let n = (d - 1) / 4;
                (n, n, 2 * n)
            }
            C4n2 => {
                let n = (d - 2) / 4;
                (n, n, 2 * n + 1)
            }
            C4n => {
                let n = d / 4;
                (n - 1, n, 2 * n)
            }
            Odd1 => {
                let n = (d - 1) / 6;
                (n, 2 * n, 3 * n)
            }
            Odd3 => {
                let n = (d - 3) / 6;
                (n, 2 * n + 1, 3 * n + 1)
            }
            Even4 => {
                let n = (d - 4) / 6;
                (n, 2 * n + 1, 3 * n + 2)
            }
            Even0 => {
                let n = d / 6;
                (n - 1, 2 * n, 3 * n)
            }
            C3n1 => {
                let n = (d - 1) / 3;
                (n, n, n)
            }
            C3n => {
                let n = d / 3;
                (n - 1, n, n)
            }
        })
    }

    /// LHS - RHS of the defining identity, evaluated in any commutative
    /// structure where `z` and `one` live.
    fn residual<T>(self, z: &T, one: &T, p: &T, q: &T, r: &T) -> T
    where
        T: Clone,
        for<'a> &'a T: std::ops::Add<&'a T, Output = T>
            + std::ops::Sub<&'a T, Output = T>
            + std::ops::Mul<&'a T, Output = T>,
    {
        use DegreeClass::*;
        let sq = |x: &T| x * x;
        let cube = |x: &T| &(x * x) * x;
        let omz = one - z;
        match self {
            C4n1 => {
                let q4 = sq(&sq(q));
                let p4 = sq(&sq(p));
                &(&omz * &sq(r)) - &(&q4 - &(z * &p4))
            }
            C4n2 => {
                let q4 = sq(&sq(q));
                let p4 = sq(&sq(p));
                &sq(r) - &(&(&sq(&omz) * &q4) - &(z * &p4))
            }
            C4n => {
                let q4 = sq(&sq(q));
                let p4 = sq(&sq(p));
                &sq(r) - &(&q4 - &(&(z * &sq(&omz)) * &p4))
            }
            Odd1 | Odd3 => {
                let p6 = sq(&cube(p));
                &(&omz * &sq(r)) - &(&cube(q) - &(z * &p6))
            }
            Even4 | Even0 => {
                let p6 = sq(&cube(p));
                &sq(r) - &(&cube(q) - &(&(z * &cube(&omz)) * &p6))
            }
            C3n1 => &(&(z * &cube(p)) + &(&omz * &cube(r))) - &cube(q),
            C3n => {
                let zzm1 = z * &(z - one);
                &(&zzm1 * &cube(p)) - &(&cube(q) + &cube(r))
            }
        }
    }

    /// Whether the defining identity holds exactly for (P, Q, R).
    pub fn identity_holds(self, p: &Poly, q: &Poly, r: &Poly) -> bool {
        let ring = p.ring();
        self.residual(&Poly::z(ring), &Poly::one(ring), p, q, r).is_zero()
    }
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A polynomial triple indexed by a lattice element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    pub family: Family,
    pub class: DegreeClass,
    pub u: RingElement,
    pub p: Poly,
    pub q: Poly,
    pub r: Poly,
}

impl Triple {
    pub fn new(family: Family, class: DegreeClass, u: RingElement, p: Poly, q: Poly, r: Poly) -> Self {
        Triple { family, class, u, p, q, r }
    }

    /// The seed (unit, 1, 1) for a unit of the family's ring.
    pub fn seed(family: Family, unit: &RingElement) -> Result<Self> {
        if unit.ring() != family.ring() {
            return Err(Error::RingMismatch(format!("{} seed", family)));
        }
        if !unit.is_unit() {
            return Err(Error::NonUnit(unit.to_string()));
        }
        let ring = family.ring();
        let one = Poly::one(ring);
        let class = family.class_for_degree(1).expect("degree one exists");
        let p0 = match family {
            // negative units take the swapped coordinate form, whose P(0) is -u
            Family::E3 => FieldElement::from_int(ring, i64::from(unit.residue_mod_sqrt_minus3())),
            _ => FieldElement::one(ring),
        };
        let p = Poly::constant(&p0 * &unit.to_field());
        Ok(Triple::new(family, class, unit.clone(), p, one.clone(), one))
    }

    pub fn identity(family: Family) -> Self {
        Triple::seed(family, &RingElement::one(family.ring())).expect("1 is a unit")
    }

    pub fn degree(&self) -> u64 {
        self.u.norm_u64()
    }

    /// Value P(0) expected from the normalisation convention.
    pub fn expected_p0(&self) -> FieldElement {
        let u = self.u.to_field();
        match (self.family, self.class) {
            (Family::E3, DegreeClass::C3n1) => {
                FieldElement::from_int(u.ring(), i64::from(self.u.residue_mod_sqrt_minus3())) * u
            }
            (Family::E3, _) => -u,
            _ => u,
        }
    }

    fn expected_r0(&self) -> FieldElement {
        match self.class {
            DegreeClass::C3n => FieldElement::from_int(self.u.ring(), -1),
            _ => FieldElement::one(self.u.ring()),
        }
    }

    /// Exact check of the class identity, the degree table and the
    /// normalisation at z = 0.
    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    /// Like [`Triple::verify`] but names the first failing condition.
    pub fn check(&self) -> Result<()> {
        let ring = self.family.ring();
        let bad = |m: String| Err(Error::InvalidTriple(m));
        if self.u.ring() != ring || [&self.p, &self.q, &self.r].iter().any(|x| x.ring() != ring) {
            return bad("ring does not match family".into());
        }
        if self.class.family() != self.family {
            return bad(format!("class {} is not a {} class", self.class, self.family));
        }
        if self.u.is_zero() {
            return bad("zero index".into());
        }
        let d = self.degree();
        let Some((dp, dq, dr)) = self.class.expected_degrees(d) else {
            return bad(format!("norm {d} is not in class {}", self.class));
        };
        let degs = (self.p.degree(), self.q.degree(), self.r.degree());
        if degs != (Some(dp), Some(dq), Some(dr)) {
            return bad(format!("degrees {:?} but class wants ({dp}, {dq}, {dr})", degs));
        }
        if !self.q.at_zero().is_one() || self.r.at_zero() != self.expected_r0() {
            return bad("Q(0), R(0) not normalised".into());
        }
        let p0 = self.p.at_zero();
        let u = self.u.to_field();
        let p0_ok = match self.family {
            // which coordinate form applies is a convention on E3; accept either sign
            Family::E3 => p0 == u || p0 == -&u,
            _ => p0 == u,
        };
        if !p0_ok {
            return bad(format!("P(0) = {p0}, index {}", self.u));
        }
        if !self.class.identity_holds(&self.p, &self.q, &self.r) {
            return bad(format!("identity for class {} fails", self.class));
        }
        Ok(())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} u={} [{}]: P = {}; Q = {}; R = {}",
            self.family, self.u, self.class, self.p, self.q, self.r
        )
    }
}

pub fn verify_triple(t: &Triple) -> bool {
    t.verify()
}

fn omz(ring: Ring) -> Poly {
    Poly::one_minus_z(ring)
}

/// Largest divisor d of the squarefree `t` with d^k | f.
fn max_power_divisor(t: &Poly, f: &Poly, k: u32) -> Poly {
    let mut d = t.clone();
    for j in 0..k {
        if d.deg0() == 0 {
            break;
        }
        let rest = f.exact_div(&d.pow(j)).expect("d^j divides f by construction");
        d = d.gcd(&rest);
    }
    d
}

/// Remove every common factor h coprime to 1 - z with h^w dividing each member.
fn strip_common(p: Poly, q: Poly, r: Poly, w: (u32, u32, u32)) -> (Poly, Poly, Poly) {
    let (mut p, mut q, mut r) = (p, q, r);
    let line = omz(p.ring());
    loop {
        let mut g = p.gcd(&q).gcd(&r);
        while g.deg0() > 0 && line.divides(&g) {
            g = g.exact_div(&line).expect("checked");
        }
        if g.deg0() == 0 {
            break;
        }
        let sqf = g.exact_div(&g.gcd(&g.derivative())).expect("gcd divides");
        let mut d = max_power_divisor(&sqf, &p, w.0);
        d = max_power_divisor(&d, &q, w.1);
        d = max_power_divisor(&d, &r, w.2);
        if d.deg0() == 0 {
            break;
        }
        p = p.exact_div(&d.pow(w.0)).expect("checked");
        q = q.exact_div(&d.pow(w.1)).expect("checked");
        r = r.exact_div(&d.pow(w.2)).expect("checked");
    }
    (p, q, r)
}

fn strip_line(p: &Poly, k: usize) -> Option<Poly> {
    let line = omz(p.ring());
    let mut out = p.clone();
    for _ in 0..k {
        let (qt, rem) = out.div_rem(&line).ok()?;
        if !rem.is_zero() {
            return None;
        }
        out = qt;
    }
    Some(out)
}

/// Reduce a raw recursion output to the normalised triple for `u`.
///
/// Common factors are removed projectively; surplus powers of (1 - z) are
/// then read off from the degree table of the target class, which also
/// absorbs the class conversions between representations.
pub(crate) fn settle(family: Family, u: &RingElement, raw: (Poly, Poly, Poly)) -> Result<Triple> {
    let d = u.norm_u64();
    let class = family
        .class_for_degree(d)
        .ok_or_else(|| Error::UnsupportedClass(format!("norm {d} on {family}")))?;
    let (ep, eq, er) = class.expected_degrees(d).expect("class matches degree");
    let (p, q, r) = raw;
    if p.is_zero() || q.is_zero() || r.is_zero() {
        return Err(Error::Degenerate(format!("recursion for {u} produced a zero polynomial")));
    }
    let (p, q, r) = strip_common(p, q, r, family.weights());
    let excess = |x: &Poly, e: usize| x.deg0().checked_sub(e);
    let fail = || Error::InvalidTriple(format!("recursion for {u} on {family} does not settle into class {class}"));
    let (kp, kq, kr) = match (excess(&p, ep), excess(&q, eq), excess(&r, er)) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(fail()),
    };
    let p = strip_line(&p, kp).ok_or_else(fail)?;
    let q = strip_line(&q, kq).ok_or_else(fail)?;
    let r = strip_line(&r, kr).ok_or_else(fail)?;
    if !class.identity_holds(&p, &q, &r) {
        return Err(fail());
    }
    normalize(family, class, u, p, q, r)
}

/// Apply the projective scaling that puts the triple in normal form at z = 0.
fn normalize(family: Family, class: DegreeClass, u: &RingElement, p: Poly, q: Poly, r: Poly) -> Result<Triple> {
    let q0 = q.at_zero();
    if q0.is_zero() {
        return Err(Error::InvalidTriple("Q(0) = 0".into()));
    }
    let c = match family {
        Family::E1 | Family::E3 => q0.inv()?,
        Family::E2 => {
            let p0 = p.at_zero();
            if p0.is_zero() {
                return Err(Error::InvalidTriple("P(0) = 0".into()));
            }
            let c = u.to_field().try_div(&p0)?;
            if !(&(&c * &c) * &q0).is_one() {
                return Err(Error::InvalidTriple(format!("triple for {u} carries a root-of-unity twist")));
            }
            c
        }
    };
    let (wp, wq, wr) = family.weights();
    let t = Triple::new(
        family,
        class,
        u.clone(),
        p.scale(&c.pow(wp)),
        q.scale(&c.pow(wq)),
        r.scale(&c.pow(wr)),
    );
    if t.p.at_zero() != t.expected_p0() || t.r.at_zero() != t.expected_r0() {
        return Err(Error::InvalidTriple(format!(
            "normalisation mismatch for {u}: P(0) = {}, R(0) = {}",
            t.p.at_zero(),
            t.r.at_zero()
        )));
    }
    Ok(t)
}

/// Even E1 triples in the (4n+2) representation.
fn e1_as_c4n2(t: &Triple) -> (Poly, Poly, Poly) {
    match t.class {
        DegreeClass::C4n => {
            let l = omz(t.p.ring());
            (&l * &t.p, t.q.clone(), &l * &t.r)
        }
        _ => (t.p.clone(), t.q.clone(), t.r.clone()),
    }
}

/// Even E2 triples decorated into the odd representation.
fn e2_as_odd(t: &Triple) -> (Poly, Poly, Poly) {
    if t.class.is_odd() {
        (t.p.clone(), t.q.clone(), t.r.clone())
    } else {
        let l = omz(t.p.ring());
        (&l * &t.p, &l * &t.q, &l * &t.r)
    }
}

type Raw = (Poly, Poly, Poly);

/// Sum of two odd E1 triples, in the (4n+2) representation.
fn e4add(a: &Raw, b: &Raw) -> Raw {
    let (p1, q1, r1) = a;
    let (p2, q2, r2) = b;
    let ring = p1.ring();
    let z = Poly::z(ring);
    let a1 = &(p1 * p1) * &(q2 * q2);
    let a2 = &(p2 * p2) * &(q1 * q1);
    let pq = &(p1 * p2) * &(q1 * q2);
    let inner = &(&(q1 * q1) * &(q2 * q2)) - &(&z * &(&(p1 * p1) * &(p2 * p2)));
    let p = &a1 - &a2;
    let q = &(&(p1 * q1) * r2) - &(&(p2 * q2) * r1);
    let r = &(&(&omz(ring) * &(&a1 + &a2)) * &(r1 * r2)) - &(&pq * &inner).scale_int(2);
    (p, q, r)
}

/// Sum of two (4n+2) E1 triples, in the (4n) representation.
fn e4add2(a: &Raw, b: &Raw) -> Raw {
    let (p1, q1, r1) = a;
    let (p2, q2, r2) = b;
    let ring = p1.ring();
    let z = Poly::z(ring);
    let l = omz(ring);
    let a1 = &(p1 * p1) * &(q2 * q2);
    let a2 = &(p2 * p2) * &(q1 * q1);
    let pq = &(p1 * p2) * &(q1 * q2);
    let inner = &(&(&l * &l) * &(&(q1 * q1) * &(q2 * q2))) - &(&z * &(&(p1 * p1) * &(p2 * p2)));
    let p = &a1 - &a2;
    let q = &(&(p1 * q1) * r2) - &(&(p2 * q2) * r1);
    let r = &(&(&a1 + &a2) * &(r1 * r2)) - &(&pq * &inner).scale_int(2);
    (p, q, r)
}

/// Sum of a (4n+2) triple `a` and an odd triple `b`, in the (4n+1) representation.
fn e4add3(a: &Raw, b: &Raw) -> Raw {
    let (p1, q1, r1) = a;
    let (p2, q2, r2) = b;
    let ring = p1.ring();
    let z = Poly::z(ring);
    let l = omz(ring);
    let a1 = &(p1 * p1) * &(q2 * q2);
    let a2 = &(p2 * p2) * &(q1 * q1);
    let pq = &(p1 * p2) * &(q1 * q2);
    let inner = &(&l * &(&(q1 * q1) * &(q2 * q2))) - &(&z * &(&(p1 * p1) * &(p2 * p2)));
    let p = &a1 - &(&l * &a2);
    let q = &(&(&l * &(p1 * q1)) * r2) - &(&(p2 * q2) * r1);
    // the (1 - z) in the first R term sits on P2^2 Q1^2, matching the P term
    let r = &(&(&a1 + &(&l * &a2)) * &(r1 * r2)) - &(&pq * &inner).scale_int(2);
    (p, q, r)
}

/// Sum of two odd-represented E2 triples, in the odd representation.
fn e6add(a: &Raw, b: &Raw) -> Raw {
    let (p1, q1, r1) = a;
    let (p2, q2, r2) = b;
    let ring = p1.ring();
    let z = Poly::z(ring);
    let s1 = &(p1 * p1) * q2;
    let s2 = &(p2 * p2) * q1;
    let p = &s1 - &s2;
    let p1p2 = p1 * p2;
    let q = &(&(&(q1 * q2) * &(&s1 + &s2)) - &(&(&omz(ring) * &p1p2) * &(r1 * r2)).scale_int(2))
        - &(&z * &p1p2.pow(4)).scale_int(2);
    let t1 = &(&(&(p1 * &(q2 * q2)) * r1) * &(&s1 + &s2.scale_int(3)));
    let t2 = &(&(&(p2 * &(q1 * q1)) * r2) * &(&s2 + &s1.scale_int(3)));
    let t3 = &(&z * &p1p2.pow(3)) * &(&(&p1.pow(3) * r2) - &(&p2.pow(3) * r1));
    let r = &(t1 - t2) + &t3.scale_int(4);
    (p, q, r)
}

fn same_family(t1: &Triple, t2: &Triple) -> Result<()> {
    if t1.family != t2.family {
        return Err(Error::UnsupportedClass(format!("cannot add {} and {} triples", t1.family, t2.family)));
    }
    Ok(())
}

/// The triple for u1 + u2.
pub fn add_triples(t1: &Triple, t2: &Triple) -> Result<Triple> {
    same_family(t1, t2)?;
    let u = &t1.u + &t2.u;
    if u.is_zero() {
        return Err(Error::Degenerate(format!("{} + {} = 0", t1.u, t2.u)));
    }
    if t1.u == t2.u {
        return duplicate(t1);
    }
    match t1.family {
        Family::E1 => {
            let raw = match (t1.class.is_odd(), t2.class.is_odd()) {
                (true, true) => e4add(&(t1.p.clone(), t1.q.clone(), t1.r.clone()), &(t2.p.clone(), t2.q.clone(), t2.r.clone())),
                (false, false) => e4add2(&e1_as_c4n2(t1), &e1_as_c4n2(t2)),
                (false, true) => e4add3(&e1_as_c4n2(t1), &(t2.p.clone(), t2.q.clone(), t2.r.clone())),
                (true, false) => e4add3(&e1_as_c4n2(t2), &(t1.p.clone(), t1.q.clone(), t1.r.clone())),
            };
            settle(Family::E1, &u, raw)
        }
        Family::E2 => settle(Family::E2, &u, e6add(&e2_as_odd(t1), &e2_as_odd(t2))),
        Family::E3 => e3_add(t1, t2),
    }
}

/// Multiply the index by a unit. The covering itself does not change.
pub fn unit_action(t: &Triple, unit: &RingElement) -> Result<Triple> {
    if unit.ring() != t.family.ring() {
        return Err(Error::RingMismatch("unit action".into()));
    }
    if !unit.is_unit() {
        return Err(Error::NonUnit(unit.to_string()));
    }
    let u = &t.u * unit;
    match t.family {
        Family::E1 | Family::E2 => Ok(Triple::new(
            t.family,
            t.class,
            u,
            t.p.scale(&unit.to_field()),
            t.q.clone(),
            t.r.clone(),
        )),
        Family::E3 => {
            // unit = sign * (cube root of unity)
            let sign = unit.residue_mod_sqrt_minus3();
            let root = if sign == 1 { unit.clone() } else { -unit };
            let p = t.p.scale(&root.to_field());
            if sign == 1 || t.class == DegreeClass::C3n1 {
                Ok(Triple::new(t.family, t.class, u, p, t.q.clone(), t.r.clone()))
            } else {
                // negation swaps the coordinates, i.e. Q and R
                Ok(Triple::new(t.family, t.class, u, -p, -&t.r, -&t.q))
            }
        }
    }
}

/// The triple for 2u.
pub fn duplicate(t: &Triple) -> Result<Triple> {
    let ring = t.family.ring();
    let z = Poly::z(ring);
    let u2 = &t.u + &t.u;
    match t.family {
        Family::E1 => {
            let (p, q, r) = match t.class {
                DegreeClass::C4n1 => (t.p.clone(), t.q.clone(), t.r.clone()),
                _ => e1_as_c4n2(t),
            };
            let p4 = p.pow(4);
            let q4 = q.pow(4);
            let lead = &(&p * &q) * &r;
            let raw = if t.class == DegreeClass::C4n1 {
                (
                    lead.scale_int(2),
                    &q4 + &(&z * &p4),
                    &(&q4 * &q4) - &(&(&z * &p4) * &q4).scale_int(6) + &(&z * &z) * &(&p4 * &p4),
                )
            } else {
                let l2 = omz(ring).pow(2);
                let lq4 = &l2 * &q4;
                (
                    lead.scale_int(2),
                    &lq4 + &(&z * &p4),
                    &(&lq4 * &lq4) - &(&(&z * &p4) * &lq4).scale_int(6) + &(&z * &z) * &(&p4 * &p4),
                )
            };
            settle(Family::E1, &u2, raw)
        }
        Family::E2 => {
            let (p, q, r) = e2_as_odd(t);
            let zp6 = &z * &p.pow(6);
            let q3 = q.pow(3);
            let raw = (
                (&p * &r).scale_int(2),
                &q * &(&q3 + &zp6.scale_int(8)),
                &(&(&q3 * &q3) - &(&zp6 * &q3).scale_int(20)) - &(&zp6 * &zp6).scale_int(8),
            );
            settle(Family::E2, &u2, raw)
        }
        Family::E3 => {
            // 2 = 1 - w^2 - w
            let w = RingElement::gen(ring);
            let a = unit_action(t, &-(&w * &w))?;
            let b = unit_action(t, &-&w)?;
            add_triples(&add_triples(t, &a)?, &b)
        }
    }
}

/// E2 only: the triple for (1 - w) u.
pub fn mul_one_minus_omega(t: &Triple) -> Result<Triple> {
    if t.family != Family::E2 {
        return Err(Error::UnsupportedClass(format!("multiplication by 1-w on {}", t.family)));
    }
    let ring = t.family.ring();
    let z = Poly::z(ring);
    let factor = RingElement::new(ring, 1, -1);
    let (p, q, r) = e2_as_odd(t);
    let zp6 = &z * &p.pow(6);
    let q3 = q.pow(3);
    let raw = (
        (&p * &q).scale(&factor.to_field()),
        &q3 - &zp6.scale_int(4),
        &(&q3 + &zp6.scale_int(8)) * &r,
    );
    settle(Family::E2, &(&t.u * &factor), raw)
}

/// E1 only: the triple for (1 + i) u.
pub fn mul_one_plus_i(t: &Triple) -> Result<Triple> {
    if t.family != Family::E1 {
        return Err(Error::UnsupportedClass(format!("multiplication by 1+i on {}", t.family)));
    }
    let ring = t.family.ring();
    let z = Poly::z(ring);
    let factor = RingElement::new(ring, 1, 1);
    let (p, q, r) = match t.class {
        DegreeClass::C4n1 => (t.p.clone(), t.q.clone(), t.r.clone()),
        _ => e1_as_c4n2(t),
    };
    let q4 = if t.class == DegreeClass::C4n1 { q.pow(4) } else { &omz(ring).pow(2) * &q.pow(4) };
    let raw = ((&p * &q).scale(&factor.to_field()), r, &q4 + &(&z * &p.pow(4)));
    settle(Family::E1, &(&t.u * &factor), raw)
}

/// Re-express a triple in another class's identity, where the recursions
/// allow it: E1 4n -> 4n+2, E1 4n+2 -> 4n, E2 even -> odd, and back.
/// The result is a raw representation (no normalisation), tagged with the
/// target class.
pub fn class_convert(t: &Triple, target: DegreeClass) -> Result<Triple> {
    use DegreeClass::*;
    let l = omz(t.family.ring());
    let unsupported = || Error::UnsupportedClass(format!("{} -> {}", t.class, target));
    if target.family() != t.family {
        return Err(unsupported());
    }
    let (p, q, r) = match (t.class, target) {
        (a, b) if a == b => (t.p.clone(), t.q.clone(), t.r.clone()),
        (C4n, C4n2) => (&l * &t.p, t.q.clone(), &l * &t.r),
        (C4n2, C4n) => (t.p.clone(), &l * &t.q, &l * &t.r),
        (Even4 | Even0, Odd1 | Odd3) => (&l * &t.p, &l * &t.q, &l * &t.r),
        (Odd1 | Odd3, Even4 | Even0) => (
            t.p.exact_div(&l).map_err(|_| unsupported())?,
            t.q.exact_div(&l).map_err(|_| unsupported())?,
            t.r.exact_div(&l).map_err(|_| unsupported())?,
        ),
        (C4n2, C4n2) | (C4n, C4n) => unreachable!(),
        _ => return Err(unsupported()),
    };
    let out = Triple::new(t.family, target, t.u.clone(), p, q, r);
    if !target.identity_holds(&out.p, &out.q, &out.r) {
        return Err(unsupported());
    }
    Ok(out)
}

/// One step of the Euclidean walk: the unit e minimising norm(u - e),
/// skipping choices where u - e = e when `avoid_doubling` is set.
pub fn walk_step(u: &RingElement, avoid_doubling: bool) -> RingElement {
    units(u.ring())
        .into_iter()
        .filter(|e| !(avoid_doubling && &(u - e) == e))
        .min_by_key(|e| (u - e).norm())
        .expect("unit group is nonempty")
}

/// The triple for `u` on E1 or E2, built by the Euclidean lattice walk from
/// the seeds (e, 1, 1). The index is used as given; associates of `u` give
/// the same covering.
pub fn generate(family: Family, u: &RingElement) -> Result<Triple> {
    if family == Family::E3 {
        return e3_generate(u);
    }
    generate_with(family, u, &mut HashMap::new())
}

fn generate_with(family: Family, u: &RingElement, memo: &mut HashMap<RingElement, Triple>) -> Result<Triple> {
    if u.ring() != family.ring() {
        return Err(Error::RingMismatch(format!("{} index for {family}", u.ring().name())));
    }
    if u.is_zero() {
        return Err(Error::ZeroElement("triple"));
    }
    if let Some(t) = memo.get(u) {
        return Ok(t.clone());
    }
    // unwind the walk iteratively, then fold back up
    let mut chain: Vec<(RingElement, RingElement)> = Vec::new();
    let mut cur = u.clone();
    let base = loop {
        if let Some(t) = memo.get(&cur) {
            break t.clone();
        }
        if cur.is_unit() {
            break Triple::seed(family, &cur)?;
        }
        let e = walk_step(&cur, false);
        let rest = &cur - &e;
        if rest == e {
            break duplicate(&Triple::seed(family, &e)?)?;
        }
        chain.push((cur.clone(), e));
        cur = rest;
    };
    memo.insert(cur, base.clone());
    let mut acc = base;
    for (target, e) in chain.into_iter().rev() {
        acc = add_triples(&acc, &Triple::seed(family, &e)?)?;
        debug_assert_eq!(acc.u, target);
        memo.insert(target, acc.clone());
    }
    Ok(acc)
}

/// Triples for every canonical representative with norm up to `max_norm`.
pub fn canonical_indices(family: Family, max_norm: u64) -> Vec<RingElement> {
    crate::arith::canonical_elements_up_to(max_norm, family.ring())
}


#[cfg(test)]
mod tests;
