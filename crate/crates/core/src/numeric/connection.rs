//! Connection formulas between the local solutions at 0, 1 and infinity of
//! the degenerate equation z(1-z)y'' + (1 - a - (1+c)z)y' = 0, with
//! b = 1 - a - c, and their three elliptic specializations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::gamma::{gamma, GammaConstant};
use super::hp::{HpComplex, HpReal, Prec};
use super::series::{hpg2f1, working, HpgParams};
use crate::arith::BigRat;
use crate::error::{Error, Result};
use num_traits::{One, Signed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Connection {
    /// Local solutions at 0 and 1; real z in (0, 1).
    Con01,
    /// Local solutions at 0 and infinity; real z < 0.
    Con02,
    /// Local solutions at 1 and infinity; real z > 1.
    Con03,
    /// (a, b, c) = (1/4, 1/2, 1/4) with z = x^2, real x in (0, 1).
    Spec144,
    /// (a, b, c) = (1/6, 1/2, 1/3), real z in (0, 1).
    Spec126,
    /// (a, b, c) = (1/3, 1/3, 1/3), real z in (0, 1).
    Spec333,
}

impl Connection {
    pub const ALL: [Connection; 6] =
        [Connection::Con01, Connection::Con02, Connection::Con03, Connection::Spec144, Connection::Spec126, Connection::Spec333];

    pub fn name(self) -> &'static str {
        match self {
            Connection::Con01 => "con01",
            Connection::Con02 => "con02",
            Connection::Con03 => "con03",
            Connection::Spec144 => "spec144",
            Connection::Spec126 => "spec126",
            Connection::Spec333 => "spec333",
        }
    }

    /// Five interior sample points, all reachable by the series (with Pfaff).
    pub fn default_points(self) -> Vec<BigRat> {
        let pts: &[(i64, i64)] = match self {
            Connection::Con01 | Connection::Spec126 | Connection::Spec333 => &[(1, 5), (3, 10), (1, 2), (7, 10), (4, 5)],
            Connection::Con02 => &[(-1, 2), (-1, 1), (-3, 2), (-2, 1), (-3, 1)],
            Connection::Con03 => &[(5, 4), (3, 2), (2, 1), (3, 1), (5, 1)],
            Connection::Spec144 => &[(2, 5), (1, 2), (3, 5), (7, 10), (4, 5)],
        };
        pts.iter().map(|&(a, b)| BigRat::new(a.into(), b.into())).collect()
    }

    fn in_region(self, x: &BigRat) -> bool {
        let one = BigRat::one();
        match self {
            Connection::Con01 | Connection::Spec126 | Connection::Spec333 | Connection::Spec144 => {
                x.is_positive() && x < &one
            }
            Connection::Con02 => x.is_negative(),
            Connection::Con03 => x > &one,
        }
    }
}

impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Connection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k = s.trim().to_ascii_lowercase().replace('_', "");
        Connection::ALL
            .into_iter()
            .find(|c| c.name() == k)
            .ok_or_else(|| Error::Parse { what: "connection formula", input: s.to_string() })
    }
}

/// Exponents (a, c) of the degenerate equation; b = 1 - a - c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degenerate {
    pub a: BigRat,
    pub b: BigRat,
    pub c: BigRat,
}

impl Degenerate {
    pub fn new(a: BigRat, c: BigRat) -> Result<Self> {
        let b = BigRat::one() - &a - &c;
        for (n, v) in [("a", &a), ("b", &b), ("c", &c)] {
            if !v.is_positive() {
                return Err(Error::Domain(format!("{n} = {v} must be positive")));
            }
        }
        Ok(Degenerate { a, b, c })
    }

    fn of(a: (i64, i64), c: (i64, i64)) -> Self {
        Self::new(BigRat::new(a.0.into(), a.1.into()), BigRat::new(c.0.into(), c.1.into())).expect("positive exponents")
    }

    pub fn quarter() -> Self {
        Self::of((1, 4), (1, 4))
    }

    pub fn sixth() -> Self {
        Self::of((1, 6), (1, 3))
    }

    pub fn third() -> Self {
        Self::of((1, 3), (1, 3))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionCheck {
    pub which: Connection,
    pub constant: String,
    pub max_rel_err: f64,
}

fn params(a: &BigRat, b: &BigRat, c: &BigRat) -> HpgParams {
    HpgParams { a: a.clone(), b: b.clone(), c: c.clone() }
}

fn f(p: HpgParams, x: &BigRat, prec: u32) -> Result<HpComplex> {
    hpg2f1(&p, &HpComplex::from_rat(working(prec), x), prec)
}

/// Gamma(x) Gamma(y) / Gamma(x + y).
fn beta(x: &BigRat, y: &BigRat, wp: Prec) -> Result<HpReal> {
    Ok(gamma(x, wp)?.mul(&gamma(y, wp)?).div(&gamma(&(x + y), wp)?))
}

/// Positive real x to a rational power.
fn rpow(x: &BigRat, e: &BigRat, wp: Prec) -> HpReal {
    HpReal::from_rat(wp, x).pow_rat(e)
}

/// The two-term left side at a point. `con03_sign` picks the power of z
/// in the third formula: -1 is the valid one, +1 reproduces the variant
/// with the sign flipped.
fn lhs(which: Connection, d: &Degenerate, x: &BigRat, prec: u32, con03_sign: i64) -> Result<HpComplex> {
    let wp = working(prec);
    let one = BigRat::one();
    let (a, b, c) = (&d.a, &d.b, &d.c);
    let over = |v: HpComplex, k: &BigRat| v.mul_rat(&(BigRat::one() / k));
    Ok(match which {
        Connection::Con01 => {
            let t0 = f(params(a, &(&one - b), &(&one + a)), x, prec)?.scale(&rpow(x, a, wp));
            let t1 = f(params(b, &(&one - a), &(&one + b)), &(&one - x), prec)?.scale(&rpow(&(&one - x), b, wp));
            over(t0, a).add(&over(t1, b))
        }
        Connection::Con02 => {
            let mx = -x.clone();
            let t0 = f(params(a, &(&one - b), &(&one + a)), x, prec)?.scale(&rpow(&mx, a, wp));
            let t1 = f(params(c, &(&one - b), &(&one + c)), &(&one / x), prec)?.scale(&rpow(&mx, &-c.clone(), wp));
            over(t0, a).add(&over(t1, c))
        }
        Connection::Con03 => {
            let t0 = f(params(b, &(&one - a), &(&one + b)), &(&one - x), prec)?.scale(&rpow(&(x - &one), b, wp));
            let e = c * BigRat::from_integer(con03_sign.into());
            let t1 = f(params(c, &(&one - b), &(&one + c)), &(&one / x), prec)?.scale(&rpow(x, &e, wp));
            over(t0, b).add(&over(t1, c))
        }
        Connection::Spec144 => {
            let q = |a: i64, b: i64| BigRat::new(a.into(), b.into());
            let x2 = x * x;
            let t0 = f(params(&q(1, 2), &q(1, 4), &q(5, 4)), &x2, prec)?
                .scale(&HpReal::from_rat(wp, x).sqrt().ldexp(1));
            let t1 = f(params(&q(1, 2), &q(3, 4), &q(3, 2)), &(&one - &x2), prec)?
                .scale(&HpReal::from_rat(wp, &(&one - &x2)).sqrt());
            t0.add(&t1)
        }
        Connection::Spec126 => {
            let q = |a: i64, b: i64| BigRat::new(a.into(), b.into());
            let t0 = f(params(&q(1, 2), &q(1, 6), &q(7, 6)), x, prec)?.scale(&rpow(x, &q(1, 6), wp)).mul_int(&3.into());
            let t1 = f(params(&q(1, 2), &q(5, 6), &q(3, 2)), &(&one - x), prec)?.scale(&rpow(&(&one - x), &q(1, 2), wp));
            t0.add(&t1)
        }
        Connection::Spec333 => {
            let q = |a: i64, b: i64| BigRat::new(a.into(), b.into());
            let p = params(&q(1, 3), &q(2, 3), &q(4, 3));
            let t0 = f(p.clone(), x, prec)?.scale(&rpow(x, &q(1, 3), wp));
            let t1 = f(p, &(&one - x), prec)?.scale(&rpow(&(&one - x), &q(1, 3), wp));
            t0.add(&t1)
        }
    })
}

/// The right side: a Gamma quotient, from the Stirling evaluation.
pub fn connection_constant(which: Connection, d: &Degenerate, prec: u32) -> Result<HpReal> {
    let wp = working(prec);
    match which {
        Connection::Con01 => beta(&d.a, &d.b, wp),
        Connection::Con02 => beta(&d.a, &d.c, wp),
        Connection::Con03 => beta(&d.b, &d.c, wp),
        Connection::Spec144 => Ok(GammaConstant::Spec144.value(wp)),
        Connection::Spec126 => Ok(GammaConstant::Spec126.value(wp)),
        Connection::Spec333 => Ok(GammaConstant::Spec333.value(wp)),
    }
}

/// The exponents a specialization is tied to; the general formulas take
/// the caller's.
pub fn specialization(which: Connection) -> Option<Degenerate> {
    match which {
        Connection::Spec144 => Some(Degenerate::quarter()),
        Connection::Spec126 => Some(Degenerate::sixth()),
        Connection::Spec333 => Some(Degenerate::third()),
        _ => None,
    }
}

fn check(which: Connection, d: &Degenerate, points: &[BigRat], prec: u32, con03_sign: i64) -> Result<ConnectionCheck> {
    if points.is_empty() {
        return Err(Error::Domain("no sample points".into()));
    }
    let d = specialization(which).unwrap_or_else(|| d.clone());
    let k = connection_constant(which, &d, prec)?;
    let target = HpComplex::real(k.clone());
    let mut worst = HpReal::zero(working(prec));
    for x in points {
        if !which.in_region(x) {
            return Err(Error::Domain(format!("{x} is outside the region of {which}")));
        }
        let e = lhs(which, &d, x, prec, con03_sign)?.rel_err(&target);
        if e.cmp_value(&worst).is_gt() {
            worst = e;
        }
    }
    Ok(ConnectionCheck { which, constant: k.to_sci(prec as usize), max_rel_err: to_err(&worst) })
}

fn to_err(x: &HpReal) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        x.to_f64()
    }
}

/// Largest relative error of a connection formula over the points.
pub fn verify_connection(which: Connection, d: &Degenerate, points: &[BigRat], prec: u32) -> Result<ConnectionCheck> {
    check(which, d, points, prec, -1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_formulas_hold() {
        for d in [Degenerate::quarter(), Degenerate::sixth(), Degenerate::third()] {
            for c in [Connection::Con01, Connection::Con02, Connection::Con03] {
                let r = verify_connection(c, &d, &c.default_points(), 30).unwrap();
                assert!(r.max_rel_err < 1e-25, "{c} {d:?}: {}", r.max_rel_err);
            }
        }
    }

    #[test]
    fn printed_sign_of_the_third_formula_fails() {
        let d = Degenerate::quarter();
        let r = check(Connection::Con03, &d, &[BigRat::new(5.into(), 2.into())], 20, 1).unwrap();
        assert!(r.max_rel_err > 0.1);
    }

    #[test]
    fn specializations_and_regions() {
        for c in [Connection::Spec144, Connection::Spec126, Connection::Spec333] {
            let r = verify_connection(c, &Degenerate::third(), &c.default_points(), 30).unwrap();
            assert!(r.max_rel_err < 1e-25, "{c}: {}", r.max_rel_err);
        }
        let r = verify_connection(Connection::Con01, &Degenerate::sixth(), &[BigRat::new(1.into(), 4.into())], 30).unwrap();
        assert!(r.max_rel_err < 1e-25);
        assert!(verify_connection(Connection::Con01, &Degenerate::third(), &[BigRat::from_integer(2.into())], 30).is_err());
        assert!(Degenerate::new(BigRat::one(), BigRat::one()).is_err());
        assert_eq!("SPEC_144".parse::<Connection>().unwrap(), Connection::Spec144);
    }
}
