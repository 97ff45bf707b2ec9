//! Triple arithmetic on X^3 + Y^3 = 1.
//!
//! Isogenies are handled as pairs of functions in the graded algebra
//! generated over Q(w)(z) by X = z^(-1/3) and Y = (1 - 1/z)^(1/3), so that
//! X^3 = 1/z and Y^3 = (z - 1)/z. A triple (P, Q, R) with index u sits in one
//! of three coordinate forms, selected by the residue of u modulo 1 - w:
//!
//! | residue | pair                                        | class |
//! |---------|---------------------------------------------|-------|
//! |  1      | (X Q/P, Y R/P)                               | 3n+1  |
//! | -1      | (Y R/P, X Q/P)                               | 3n+1  |
//! |  0      | (X^2 Y^2 Q/P z/(z-1), X^2 Y^2 R/P z/(z-1))   | 3n    |
//!
//! and pairs add by the chord law
//!
//! ```text
//! D   = f_u g_u - f_v g_v
//! f'  = (f_u g_v^2 - f_v g_u^2) / D
//! g'  = (f_v^2 g_u - f_u^2 g_v) / D
//! ```
//!
//! with neutral point (1 : -1 : 0) and negation (X, Y) -> (Y, X).
//!
//! Expanding the law on two residue-1 pairs gives a closed form that never
//! leaves Q(w)[z] (derived here, not quoted):
//!
//! ```text
//! P' = P2^2 Q1 R1 - P1^2 Q2 R2
//! Q' = P1 Q2^2 R1 - P2 Q1^2 R2
//! R' = P1 Q1 R2^2 - P2 Q2 R1^2
//! ```
//!
//! up to a common factor, landing in the residue -1 form. The graded
//! algebra covers every other combination uniformly.

use crate::arith::{Ring, RingElement};
use crate::error::{Error, Result};
use crate::poly::{Poly, RationalMap};

use super::{normalize, walk_step, DegreeClass, Family, Triple};

const RING: Ring = Ring::Eisenstein;

/// X^i Y^j f(z) with 0 <= i, j < 3.
#[derive(Clone, Debug, PartialEq)]
struct Graded {
    i: u8,
    j: u8,
    f: RationalMap,
}

fn x_cubed() -> RationalMap {
    RationalMap::new(Poly::one(RING), Poly::z(RING)).expect("z is nonzero")
}

fn y_cubed() -> RationalMap {
    RationalMap::new(Poly::from_ints(RING, &[-1, 1]), Poly::z(RING)).expect("z is nonzero")
}

impl Graded {
    fn new(i: u8, j: u8, f: RationalMap) -> Self {
        Graded { i: i % 3, j: j % 3, f }
    }

    fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    fn mul(&self, other: &Graded) -> Graded {
        let mut f = &self.f * &other.f;
        let (mut i, mut j) = (self.i + other.i, self.j + other.j);
        if i >= 3 {
            i -= 3;
            f = &f * &x_cubed();
        }
        if j >= 3 {
            j -= 3;
            f = &f * &y_cubed();
        }
        Graded { i, j, f }
    }

    fn sub(&self, other: &Graded) -> Result<Graded> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(Graded { i: other.i, j: other.j, f: other.f.neg_map() });
        }
        if (self.i, self.j) != (other.i, other.j) {
            return Err(Error::Structure(format!(
                "mixed grades X^{}Y^{} and X^{}Y^{}",
                self.i, self.j, other.i, other.j
            )));
        }
        Ok(Graded { i: self.i, j: self.j, f: &self.f - &other.f })
    }

    fn inv(&self) -> Result<Graded> {
        // X^-1 = X^2 z, Y^-1 = Y^2 z/(z-1)
        let mut out = Graded { i: 0, j: 0, f: self.f.inv()? };
        let x_inv = Graded::new(2, 0, RationalMap::from_poly(Poly::z(RING)));
        let y_inv = Graded::new(0, 2, y_cubed().inv()?);
        for _ in 0..self.i {
            out = out.mul(&x_inv);
        }
        for _ in 0..self.j {
            out = out.mul(&y_inv);
        }
        Ok(out)
    }
}

type Pair = (Graded, Graded);

fn z_over_zm1() -> RationalMap {
    RationalMap::new(Poly::z(RING), Poly::from_ints(RING, &[-1, 1])).expect("nonzero")
}

fn to_pair(t: &Triple) -> Result<Pair> {
    let q_p = RationalMap::new(t.q.clone(), t.p.clone())?;
    let r_p = RationalMap::new(t.r.clone(), t.p.clone())?;
    let p0 = t.p.at_zero();
    let u = t.u.to_field();
    match t.class {
        DegreeClass::C3n1 => {
            if p0 == u {
                Ok((Graded::new(1, 0, q_p), Graded::new(0, 1, r_p)))
            } else {
                Ok((Graded::new(0, 1, r_p), Graded::new(1, 0, q_p)))
            }
        }
        DegreeClass::C3n => {
            let k = z_over_zm1();
            let a = Graded::new(2, 2, &q_p * &k);
            let b = Graded::new(2, 2, &r_p * &k);
            if p0 == -&u {
                Ok((a, b))
            } else {
                Ok((b, a))
            }
        }
        _ => Err(Error::UnsupportedClass(format!("{} on e3", t.class))),
    }
}

fn from_pair(u: &RingElement, pair: &Pair) -> Result<Triple> {
    let d = u.norm_u64();
    let class = Family::E3
        .class_for_degree(d)
        .ok_or_else(|| Error::UnsupportedClass(format!("norm {d} on e3")))?;
    let (f, g) = pair;
    // the rational parts standing for Q/P and R/P
    let (a, b) = match (f.i, f.j, g.i, g.j) {
        (1, 0, 0, 1) => (f.f.clone(), g.f.clone()),
        (0, 1, 1, 0) => (g.f.clone(), f.f.clone()),
        (2, 2, 2, 2) => {
            let k_inv = z_over_zm1().inv()?;
            (&f.f * &k_inv, &g.f * &k_inv)
        }
        _ => {
            return Err(Error::Structure(format!(
                "unexpected grades ({},{}), ({},{})",
                f.i, f.j, g.i, g.j
            )))
        }
    };
    let common = a.den().gcd(b.den());
    let p = a.den().exact_div(&common)? * b.den();
    let q = a.num() * &p.exact_div(a.den())?;
    let r = b.num() * &p.exact_div(b.den())?;
    build(class, u, p, q, r)
}

fn build(class: DegreeClass, u: &RingElement, p: Poly, q: Poly, r: Poly) -> Result<Triple> {
    let t = normalize(Family::E3, class, u, p, q, r)?;
    t.check()?;
    Ok(t)
}

fn add_pairs(x: &Pair, y: &Pair) -> Result<Pair> {
    let (fu, gu) = x;
    let (fv, gv) = y;
    let d = fu.mul(gu).sub(&fv.mul(gv))?;
    if d.is_zero() {
        return Err(Error::Degenerate("chord through coincident points".into()));
    }
    let d_inv = d.inv()?;
    let f = fu.mul(&gv.mul(gv)).sub(&fv.mul(&gu.mul(gu)))?.mul(&d_inv);
    let g = fv.mul(fv).mul(gu).sub(&fu.mul(fu).mul(gv))?.mul(&d_inv);
    Ok((f, g))
}

/// Sum of two E3 triples.
pub fn e3_add(t1: &Triple, t2: &Triple) -> Result<Triple> {
    if t1.family != Family::E3 || t2.family != Family::E3 {
        return Err(Error::UnsupportedClass("e3 addition needs e3 triples".into()));
    }
    let u = &t1.u + &t2.u;
    if u.is_zero() {
        return Err(Error::Degenerate(format!("{} + {} = 0", t1.u, t2.u)));
    }
    if t1.u == t2.u {
        return super::duplicate(t1);
    }
    let sum = add_pairs(&to_pair(t1)?, &to_pair(t2)?)?;
    from_pair(&u, &sum)
}

/// The E3 triple for `u`, by the Euclidean walk over unit seeds. Steps whose
/// remainder would equal the unit are avoided, so no doubling is needed.
pub fn e3_generate(u: &RingElement) -> Result<Triple> {
    if u.ring() != RING {
        return Err(Error::RingMismatch("e3 index must be eisenstein".into()));
    }
    if u.is_zero() {
        return Err(Error::ZeroElement("triple"));
    }
    let mut chain = Vec::new();
    let mut cur = u.clone();
    while !cur.is_unit() {
        let e = walk_step(&cur, true);
        chain.push(e.clone());
        cur = &cur - &e;
    }
    let mut acc = Triple::seed(Family::E3, &cur)?;
    for e in chain.into_iter().rev() {
        acc = e3_add(&acc, &Triple::seed(Family::E3, &e)?)?;
    }
    Ok(acc)
}
