//! Exact arithmetic in the Gaussian integers Z[i], the Eisenstein integers
//! Z[w] (w^2 + w + 1 = 0), and their fraction fields Q(i), Q(w).
//!
//! Elements are stored in the basis (1, i) or (1, w). All values are
//! immutable and cheap to clone relative to the polynomial work built on top.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

/// Which quadratic ring an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Gauss,
    Eisenstein,
}

impl Ring {
    /// Symbol used for the second basis vector in text output.
    pub fn symbol(self) -> &'static str {
        match self {
            Ring::Gauss => "i",
            Ring::Eisenstein => "w",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ring::Gauss => "gauss",
            Ring::Eisenstein => "eisenstein",
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gauss" | "gaussian" | "i" => Ok(Ring::Gauss),
            "eisenstein" | "w" | "omega" => Ok(Ring::Eisenstein),
            _ => Err(Error::Parse { what: "ring", input: s.to_string() }),
        }
    }
}

fn check_ring(x: Ring, y: Ring) -> Result<()> {
    if x == y {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{} vs {}", x.name(), y.name())))
    }
}

// (a + b t)(c + d t) with t = i or t = w.
fn mul_parts<T>(ring: Ring, a: &T, b: &T, c: &T, d: &T) -> (T, T)
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let ac = a * c;
    let bd = b * d;
    let ad = a * d;
    let bc = b * c;
    match ring {
        Ring::Gauss => (ac - bd.clone(), ad + bc),
        // w^2 = -1 - w
        Ring::Eisenstein => (ac - bd.clone(), ad + bc - bd),
    }
}

/// An element a + b*i of Z[i] or a + b*w of Z[w].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    a: BigInt,
    b: BigInt,
}

impl RingElement {
    pub fn new(ring: Ring, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        RingElement { ring, a: a.into(), b: b.into() }
    }

    pub fn zero(ring: Ring) -> Self {
        Self::new(ring, 0, 0)
    }

    pub fn one(ring: Ring) -> Self {
        Self::new(ring, 1, 0)
    }

    /// The generator i or w.
    pub fn gen(ring: Ring) -> Self {
        Self::new(ring, 0, 1)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        match self.ring {
            Ring::Gauss => &self.a * &self.a + &self.b * &self.b,
            Ring::Eisenstein => &self.a * &self.a - &self.a * &self.b + &self.b * &self.b,
        }
    }

    /// Norm as a machine integer; panics only on absurd sizes.
    pub fn norm_u64(&self) -> u64 {
        self.norm().to_u64().expect("norm exceeds u64")
    }

    pub fn conj(&self) -> Self {
        match self.ring {
            Ring::Gauss => Self::new(self.ring, self.a.clone(), -&self.b),
            // conj(w) = w^2 = -1 - w
            Ring::Eisenstein => Self::new(self.ring, &self.a - &self.b, -&self.b),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_ring(self.ring, other.ring)?;
        Ok(Self::new(self.ring, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_ring(self.ring, other.ring)?;
        Ok(Self::new(self.ring, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_ring(self.ring, other.ring)?;
        let (a, b) = mul_parts(self.ring, &self.a, &self.b, &other.a, &other.b);
        Ok(Self::new(self.ring, a, b))
    }

    /// Exact quotient in the ring, if `other` divides `self`.
    pub fn try_div_exact(&self, other: &Self) -> Result<Option<Self>> {
        let q = self.to_field().try_div(&other.to_field())?;
        Ok(q.to_ring())
    }

    pub fn to_field(&self) -> FieldElement {
        FieldElement::new(
            self.ring,
            BigRat::from_integer(self.a.clone()),
            BigRat::from_integer(self.b.clone()),
        )
    }

    /// All associates u*e for e a unit, in the order of [`units`].
    pub fn associates(&self) -> Vec<Self> {
        units(self.ring).iter().map(|e| self * e).collect()
    }

    fn in_canonical_sector(&self) -> bool {
        match self.ring {
            Ring::Gauss => self.a.is_positive() && !self.b.is_negative(),
            // argument in [0, pi/3): b >= 0 and a > b
            Ring::Eisenstein => !self.b.is_negative() && self.a > self.b,
        }
    }

    /// The unique associate in the canonical sector.
    pub fn canonical_rep(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement("canonical representative"));
        }
        Ok(self
            .associates()
            .into_iter()
            .find(|v| v.in_canonical_sector())
            .expect("every nonzero element has exactly one canonical associate"))
    }

    /// Residue class modulo the prime 1 - w above 3, returned as 0, 1 or -1.
    pub fn residue_mod_sqrt_minus3(&self) -> i8 {
        assert_eq!(self.ring, Ring::Eisenstein, "residue mod (1-w) is an Eisenstein notion");
        // w = 1 mod (1 - w), so a + b w = a + b mod 3
        let r = (&self.a + &self.b).mod_floor(&BigInt::from(3)).to_i8().unwrap();
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    /// Approximate complex value, for diagnostics and branch screening.
    pub fn to_c64(&self) -> (f64, f64) {
        self.to_field().to_c64()
    }

    pub fn parse(input: &str, ring: Option<Ring>) -> Result<Self> {
        let fe = parse_linear(input, ring, "ring element")?;
        fe.to_ring().ok_or_else(|| Error::Parse { what: "ring element", input: input.to_string() })
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::new(self.ring, -&self.a, -&self.b)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

macro_rules! forward_binop {
    ($t:ty, $tr:ident, $m:ident, $try:ident) => {
        impl $tr<&$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                self.$try(rhs).expect(concat!(stringify!($m), " across rings"))
            }
        }
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(RingElement, Add, add, try_add);
forward_binop!(RingElement, Sub, sub, try_sub);
forward_binop!(RingElement, Mul, mul, try_mul);

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*{}", self.a, sign, self.b.abs(), self.ring.symbol())
    }
}

/// The unit group: {1, i, -1, -i} or {1, -w^2, w, -1, w^2, -w} (successive
/// rotations by 90 or 60 degrees).
pub fn units(ring: Ring) -> Vec<RingElement> {
    let step = match ring {
        Ring::Gauss => RingElement::new(ring, 0, 1),
        // -w^2 = 1 + w = exp(i pi / 3)
        Ring::Eisenstein => RingElement::new(ring, 1, 1),
    };
    let count = match ring {
        Ring::Gauss => 4,
        Ring::Eisenstein => 6,
    };
    let mut out = Vec::with_capacity(count);
    let mut cur = RingElement::one(ring);
    for _ in 0..count {
        out.push(cur.clone());
        cur = &cur * &step;
    }
    out
}

/// All canonical representatives of norm exactly `d`, sorted by (a, b).
/// An empty result means no element of that norm exists.
pub fn elements_of_norm(d: u64, ring: Ring) -> Vec<RingElement> {
    if d == 0 {
        return Vec::new();
    }
    // |a|, |b| <= sqrt(4d/3) covers the Eisenstein form; the Gaussian bound is smaller.
    let bound = ((4.0 * d as f64 / 3.0).sqrt().ceil() as i64) + 1;
    let target = BigInt::from(d);
    let mut out: Vec<RingElement> = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            let e = RingElement::new(ring, a, b);
            if e.norm() == target && e.in_canonical_sector() {
                out.push(e);
            }
        }
    }
    out.sort_by(|x, y| x.a.cmp(&y.a).then(x.b.cmp(&y.b)));
    out
}

/// Canonical representatives of every norm in `1..=max_norm`, ordered by norm.
pub fn canonical_elements_up_to(max_norm: u64, ring: Ring) -> Vec<RingElement> {
    (1..=max_norm).flat_map(|d| elements_of_norm(d, ring)).collect()
}

/// An element of Q(i) or Q(w), a + b*t with rational a, b.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    ring: Ring,
    a: BigRat,
    b: BigRat,
}

impl FieldElement {
    pub fn new(ring: Ring, a: BigRat, b: BigRat) -> Self {
        FieldElement { ring, a, b }
    }

    pub fn zero(ring: Ring) -> Self {
        Self::new(ring, BigRat::zero(), BigRat::zero())
    }

    pub fn one(ring: Ring) -> Self {
        Self::new(ring, BigRat::one(), BigRat::zero())
    }

    pub fn from_int(ring: Ring, n: i64) -> Self {
        Self::new(ring, BigRat::from_integer(n.into()), BigRat::zero())
    }

    pub fn from_rat(ring: Ring, r: BigRat) -> Self {
        Self::new(ring, r, BigRat::zero())
    }

    pub fn gen(ring: Ring) -> Self {
        Self::new(ring, BigRat::zero(), BigRat::one())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn a(&self) -> &BigRat {
        &self.a
    }

    pub fn b(&self) -> &BigRat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Rational if the second coordinate vanishes.
    pub fn as_rational(&self) -> Option<&BigRat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn to_ring(&self) -> Option<RingElement> {
        if self.a.is_integer() && self.b.is_integer() {
            Some(RingElement::new(self.ring, self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        match self.ring {
            Ring::Gauss => Self::new(self.ring, self.a.clone(), -&self.b),
            Ring::Eisenstein => Self::new(self.ring, &self.a - &self.b, -&self.b),
        }
    }

    pub fn norm(&self) -> BigRat {
        match self.ring {
            Ring::Gauss => &self.a * &self.a + &self.b * &self.b,
            Ring::Eisenstein => &self.a * &self.a - &self.a * &self.b + &self.b * &self.b,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_ring(self.ring, other.ring)?;
        Ok(Self::new(self.ring, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_ring(self.ring, other.ring)?;
        Ok(Self::new(self.ring, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_ring(self.ring, other.ring)?;
        if self.b.is_zero() {
            return Ok(other.scale(&self.a));
        }
        if other.b.is_zero() {
            return Ok(self.scale(&other.a));
        }
        let (a, b) = mul_parts(self.ring, &self.a, &self.b, &other.a, &other.b);
        Ok(Self::new(self.ring, a, b))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Self::new(self.ring, &c.a / &n, &c.b / &n))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        check_ring(self.ring, other.ring)?;
        if let Some(r) = other.as_rational() {
            if r.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::new(self.ring, &self.a / r, &self.b / r));
        }
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        Self::new(self.ring, &self.a * r, &self.b * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex value as (re, im) in f64.
    pub fn to_c64(&self) -> (f64, f64) {
        let a = rat_to_f64(&self.a);
        let b = rat_to_f64(&self.b);
        match self.ring {
            Ring::Gauss => (a, b),
            Ring::Eisenstein => (a - 0.5 * b, b * 3f64.sqrt() / 2.0),
        }
    }

    pub fn parse(input: &str, ring: Option<Ring>) -> Result<Self> {
        parse_linear(input, ring, "field element")
    }

    /// Lowest common denominator of both coordinates.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(self.ring, -&self.a, -&self.b)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

forward_binop!(FieldElement, Add, add, try_add);
forward_binop!(FieldElement, Sub, sub, try_sub);
forward_binop!(FieldElement, Mul, mul, try_mul);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*{}", self.b, self.ring.symbol());
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*{}", self.a, sign, self.b.abs(), self.ring.symbol())
    }
}

pub fn rat_to_f64(r: &BigRat) -> f64 {
    // Scale to keep precision when numerator/denominator overflow f64.
    let n = r.numer();
    let d = r.denom();
    let shift = (n.bits().max(d.bits()) as i64 - 900).max(0) as usize;
    let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
    nf / df
}

pub fn parse_rat(s: &str) -> Result<BigRat> {
    let err = || Error::Parse { what: "rational", input: s.to_string() };
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRat::new(n, d))
        }
        None => match t.split_once('.') {
            // exact decimal: "0.125" is 1/8
            Some((whole, frac)) if !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit()) => {
                let neg = whole.starts_with('-');
                let w: BigInt = match whole.trim_start_matches(['-', '+']) {
                    "" => BigInt::zero(),
                    x => x.parse().map_err(|_| err())?,
                };
                let f: BigInt = frac.parse().map_err(|_| err())?;
                let scale = num_traits::pow(BigInt::from(10), frac.len());
                let v = BigRat::new(w * &scale + f, scale);
                Ok(if neg { -v } else { v })
            }
            _ => Ok(BigRat::from_integer(t.parse().map_err(|_| err())?)),
        },
    }
}

pub fn format_rat(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses sums like "2+1i", "2 + 1*i", "-1-2i", "3w+1", "w", "1/2-w".
fn parse_linear(input: &str, ring: Option<Ring>, what: &'static str) -> Result<FieldElement> {
    let err = || Error::Parse { what, input: input.to_string() };
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut detected: Option<Ring> = ring;
    let mut a = BigRat::zero();
    let mut b = BigRat::zero();
    // split into signed terms
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (idx, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && idx > 0 && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        if body.is_empty() {
            return Err(err());
        }
        let last = body.chars().last().unwrap();
        let (coeff_str, unit) = match last {
            'i' | 'I' => (&body[..body.len() - 1], Some(Ring::Gauss)),
            'w' | 'W' => (&body[..body.len() - 1], Some(Ring::Eisenstein)),
            _ => (body, None),
        };
        let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
        let mut c = if coeff_str.is_empty() {
            if unit.is_none() {
                return Err(err());
            }
            BigRat::one()
        } else {
            parse_rat(coeff_str).map_err(|_| err())?
        };
        if neg {
            c = -c;
        }
        match unit {
            None => a += c,
            Some(r) => {
                if let Some(d) = detected {
                    if d != r {
                        return Err(err());
                    }
                }
                detected = Some(r);
                b += c;
            }
        }
    }
    let ring = detected.ok_or_else(err)?;
    Ok(FieldElement::new(ring, a, b))
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by norm, then coordinates; used for deterministic listings.
impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring
            .cmp(&other.ring)
            .then_with(|| self.norm().cmp(&other.norm()))
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> RingElement {
        RingElement::new(Ring::Gauss, a, b)
    }

    fn e(a: i64, b: i64) -> RingElement {
        RingElement::new(Ring::Eisenstein, a, b)
    }

    #[test]
    fn rationals_and_decimals() {
        let q = |a: i64, b: i64| BigRat::new(a.into(), b.into());
        assert_eq!(parse_rat("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rat("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rat("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rat("2.50").unwrap(), q(5, 2));
        assert!(parse_rat("1.").is_err() && parse_rat("1/0").is_err() && parse_rat("x").is_err());
    }

    #[test]
    fn norms_of_small_elements() {
        assert_eq!(g(2, 1).norm(), 5.into());
        assert_eq!(e(2, -1).norm(), 7.into());
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
    }

    #[test]
    fn unit_groups() {
        let gu = units(Ring::Gauss);
        assert_eq!(gu, vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]);
        let eu = units(Ring::Eisenstein);
        assert_eq!(eu.len(), 6);
        assert!(eu.iter().all(|u| u.is_unit()));
        // {±1, ±w, ±w^2} with w^2 = -1 - w
        for want in [e(1, 0), e(-1, 0), e(0, 1), e(0, -1), e(-1, -1), e(1, 1)] {
            assert!(eu.contains(&want), "missing {want}");
        }
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(g(-1, 2).canonical_rep().unwrap(), g(2, 1));
        assert_eq!(g(2, 1).canonical_rep().unwrap(), g(2, 1));
        // 3w + 1: enumerate the six associates, exactly one has b >= 0, a > b
        let u = e(1, 3);
        let sector: Vec<_> = u
            .associates()
            .into_iter()
            .filter(|v| !v.b().is_negative() && v.a() > v.b())
            .collect();
        assert_eq!(sector.len(), 1);
        assert_eq!(u.canonical_rep().unwrap(), sector[0]);
        assert_eq!(sector[0], e(3, 2));
        assert!(g(0, 0).canonical_rep().is_err());
    }

    #[test]
    fn norm_search() {
        assert!(elements_of_norm(21, Ring::Gauss).is_empty());
        assert_eq!(elements_of_norm(5, Ring::Gauss), vec![g(1, 2), g(2, 1)]);
        assert_eq!(elements_of_norm(1, Ring::Gauss), vec![g(1, 0)]);
        assert_eq!(elements_of_norm(7, Ring::Eisenstein).len(), 2);
        assert_eq!(elements_of_norm(3, Ring::Eisenstein), vec![e(2, 1)]);
        // norm 49 in Z[w]: 7 plus a conjugate pair with coordinates beyond sqrt(49)+1
        assert_eq!(elements_of_norm(49, Ring::Eisenstein).len(), 3);
    }

    #[test]
    fn gauss_norm_existence_matches_sum_of_squares_scan() {
        fn has_bad_prime(mut d: u64) -> bool {
            let mut p = 2;
            while p * p <= d {
                let mut k = 0;
                while d.is_multiple_of(p) {
                    d /= p;
                    k += 1;
                }
                if p % 4 == 3 && k % 2 == 1 {
                    return true;
                }
                p += 1;
            }
            d > 1 && d % 4 == 3
        }
        for d in 1..=200u64 {
            let scan = (0..=15u64).any(|a| (0..=15u64).any(|b| a * a + b * b == d));
            let found = !elements_of_norm(d, Ring::Gauss).is_empty();
            assert_eq!(found, scan, "d = {d}");
            assert_eq!(found, !has_bad_prime(d), "d = {d}");
        }
    }

    #[test]
    fn field_inverse_and_conjugate() {
        for ring in [Ring::Gauss, Ring::Eisenstein] {
            let x = FieldElement::parse("3/2-5t".replace('t', ring.symbol()).as_str(), Some(ring)).unwrap();
            let y = x.inv().unwrap();
            assert!((&x * &y).is_one());
            let n = &x * &x.conj();
            assert_eq!(n, FieldElement::from_rat(ring, x.norm()));
        }
        assert_eq!(FieldElement::zero(Ring::Gauss).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        assert!(matches!(g(1, 1).try_add(&e(1, 1)), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(RingElement::parse("2+1i", None).unwrap(), g(2, 1));
        assert_eq!(RingElement::parse(" 2 + 1*i ", None).unwrap(), g(2, 1));
        assert_eq!(RingElement::parse("-1-2i", None).unwrap(), g(-1, -2));
        assert_eq!(RingElement::parse("3w+1", None).unwrap(), e(1, 3));
        assert_eq!(RingElement::parse("2-w", None).unwrap(), e(2, -1));
        assert_eq!(RingElement::parse("3", Some(Ring::Gauss)).unwrap(), g(3, 0));
        assert!(RingElement::parse("3", None).is_err());
        assert!(RingElement::parse("1/2+i", None).is_err());
        assert!(RingElement::parse("2+i+w", None).is_err());
        assert_eq!(g(2, -1).to_string(), "2-1*i");
        assert_eq!(RingElement::parse(&e(-4, 7).to_string(), None).unwrap(), e(-4, 7));
    }

    fn arb_elem(ring: Ring) -> impl Strategy<Value = RingElement> {
        (-40i64..40, -40i64..40).prop_map(move |(a, b)| RingElement::new(ring, a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn norm_is_multiplicative_gauss(u in arb_elem(Ring::Gauss), v in arb_elem(Ring::Gauss)) {
            prop_assert_eq!((&u * &v).norm(), u.norm() * v.norm());
        }

        #[test]
        fn norm_is_multiplicative_eisenstein(u in arb_elem(Ring::Eisenstein), v in arb_elem(Ring::Eisenstein)) {
            prop_assert_eq!((&u * &v).norm(), u.norm() * v.norm());
        }

        #[test]
        fn canonical_rep_constant_on_associates(u in arb_elem(Ring::Eisenstein), w in arb_elem(Ring::Gauss)) {
            for x in [u, w] {
                prop_assume!(!x.is_zero());
                let c = x.canonical_rep().unwrap();
                prop_assert_eq!(c.canonical_rep().unwrap(), c.clone());
                for y in x.associates() {
                    prop_assert_eq!(y.canonical_rep().unwrap(), c.clone());
                }
            }
        }
    }
}
