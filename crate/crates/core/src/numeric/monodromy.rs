//! Exact monodromy of the normalised elliptic integrals.
//!
//! Continuation around 0 or 1 acts on F = z^a/a 2F1(a, 1-b; 1+a; z) by an
//! affine map F -> sF + t. Scales are roots of unity of order dividing 12,
//! shifts are elements of Q(i, w) = Q(zeta_12) times one fixed real
//! constant per case, so every relation is an exact equality in that field.
//! Only the constant itself is ever evaluated numerically.
//!
//! A word is read left to right in the order the loops are traversed:
//! "s0^2 s1" goes twice around 0 and then around 1.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::gamma::{gamma, GammaConstant};
use super::hp::{HpComplex, HpReal, Prec};
use crate::arith::BigRat;
use crate::error::{Error, Result};

fn q(a: i64, b: i64) -> BigRat {
    BigRat::new(a.into(), b.into())
}

/// An element c0 + c1 w + i (c2 + c3 w) of Q(i, w), w^2 + w + 1 = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo([BigRat; 4]);

impl Cyclo {
    pub fn new(c: [BigRat; 4]) -> Self {
        Cyclo(c)
    }

    pub fn zero() -> Self {
        Cyclo(std::array::from_fn(|_| BigRat::zero()))
    }

    pub fn rational(r: BigRat) -> Self {
        let mut c = Self::zero();
        c.0[0] = r;
        c
    }

    pub fn one() -> Self {
        Self::rational(BigRat::one())
    }

    pub fn i() -> Self {
        let mut c = Self::zero();
        c.0[2] = BigRat::one();
        c
    }

    pub fn w() -> Self {
        let mut c = Self::zero();
        c.0[1] = BigRat::one();
        c
    }

    /// sqrt 3 = -i (2w + 1).
    pub fn sqrt3() -> Self {
        Cyclo([BigRat::zero(), BigRat::zero(), q(-1, 1), q(-2, 1)])
    }

    /// e^(2 pi i r) for a rational r whose denominator divides 12.
    pub fn root_of_unity(r: &BigRat) -> Result<Self> {
        let twelve = r * BigRat::from_integer(12.into());
        if !twelve.is_integer() {
            return Err(Error::Domain(format!("e^(2 pi i {r}) is not a 12th root of unity")));
        }
        let k = twelve.to_integer().mod_floor(&BigInt::from(12));
        // zeta_12 = e^(i pi / 6) = -i w
        let zeta = Cyclo::i().mul(&Cyclo::w()).neg();
        let mut acc = Cyclo::one();
        let mut n = BigInt::zero();
        while n < k {
            acc = acc.mul(&zeta);
            n += 1;
        }
        Ok(acc)
    }

    pub fn coeffs(&self) -> &[BigRat; 4] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Cyclo(std::array::from_fn(|k| &self.0[k] + &o.0[k]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Cyclo(std::array::from_fn(|k| &self.0[k] - &o.0[k]))
    }

    pub fn neg(&self) -> Self {
        Cyclo(std::array::from_fn(|k| -&self.0[k]))
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        Cyclo(std::array::from_fn(|k| &self.0[k] * r))
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (p1 + i q1)(p2 + i q2) over Q(w)
        let qw = |a: &BigRat, b: &BigRat, c: &BigRat, d: &BigRat| {
            let bd = b * d;
            (a * c - &bd, a * d + b * c - bd)
        };
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &o.0;
        let (pp0, pp1) = qw(a0, a1, b0, b1);
        let (qq0, qq1) = qw(a2, a3, b2, b3);
        let (pq0, pq1) = qw(a0, a1, b2, b3);
        let (qp0, qp1) = qw(a2, a3, b0, b1);
        Cyclo([pp0 - qq0, pp1 - qq1, pq0 + qp0, pq1 + qp1])
    }

    pub fn to_hp(&self, p: Prec) -> HpComplex {
        let [c0, c1, c2, c3] = &self.0;
        let h = HpReal::from_int(p, 3).sqrt().ldexp(-1);
        let half = q(1, 2);
        // p + i q with p = c0 + c1 w, q = c2 + c3 w
        let p_re = HpReal::from_rat(p, &(c0 - c1 * &half));
        let p_im = h.mul_rat(c1);
        let q_re = HpReal::from_rat(p, &(c2 - c3 * &half));
        let q_im = h.mul_rat(c3);
        HpComplex::new(p_re.sub(&q_im), p_im.add(&q_re))
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const BASIS: [&str; 4] = ["", "w", "i", "i*w"];
        let mut first = true;
        for (c, b) in self.0.iter().zip(BASIS) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let m = c.abs();
            let body = match (b, m.is_one()) {
                ("", _) => m.to_string(),
                (b, true) => b.to_string(),
                (b, false) => format!("{m}*{b}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// F -> e^(2 pi i scale) F + shift * unit, where the unit constant is fixed
/// by the group the map belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineMonodromy {
    /// Exponent of the root of unity, reduced to [0, 1).
    #[serde(serialize_with = "ser_rat")]
    pub scale: BigRat,
    pub shift: Cyclo,
}

fn ser_rat<S: serde::Serializer>(r: &BigRat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn frac(r: &BigRat) -> BigRat {
    r - BigRat::from_integer(r.floor().to_integer())
}

impl AffineMonodromy {
    pub fn identity() -> Self {
        AffineMonodromy { scale: BigRat::zero(), shift: Cyclo::zero() }
    }

    pub fn new(scale: BigRat, shift: Cyclo) -> Result<Self> {
        let scale = frac(&scale);
        Cyclo::root_of_unity(&scale)?;
        Ok(AffineMonodromy { scale, shift })
    }

    fn rotation(&self) -> Cyclo {
        Cyclo::root_of_unity(&self.scale).expect("scale checked on construction")
    }

    /// self after other: (s1, t1) o (s2, t2) = (s1 s2, t1 + s1 t2).
    pub fn compose(&self, other: &Self) -> Self {
        AffineMonodromy {
            scale: frac(&(&self.scale + &other.scale)),
            shift: self.shift.add(&self.rotation().mul(&other.shift)),
        }
    }

    /// Traverse self, then next.
    pub fn then(&self, next: &Self) -> Self {
        next.compose(self)
    }

    pub fn inverse(&self) -> Self {
        let scale = frac(&-self.scale.clone());
        let back = Cyclo::root_of_unity(&scale).expect("scale checked on construction");
        AffineMonodromy { shift: back.mul(&self.shift).neg(), scale }
    }

    /// A closed loop on the curve returns F to its own sheet.
    pub fn is_translation(&self) -> bool {
        self.scale.is_zero()
    }
}

impl fmt::Display for AffineMonodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F -> e^(2 pi i {}) F + ({})", self.scale, self.shift)
    }
}

/// The three elliptic integrals with their normalisations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MonodromyCase {
    /// F4 = 2 sqrt(x) 2F1(1/2, 1/4; 5/4; x^2), the integral of dx/sqrt(x^3 - x).
    F4,
    /// 2 z^(1/6) 2F1(1/2, 1/6; 7/6; z), the integral of dx/sqrt(x^3 - 1).
    F6,
    /// z^(1/3) 2F1(1/3, 2/3; 4/3; z), the integral of dX/(X^3 - 1)^(2/3).
    F3,
}

impl MonodromyCase {
    pub const ALL: [MonodromyCase; 3] = [MonodromyCase::F4, MonodromyCase::F6, MonodromyCase::F3];

    pub fn name(self) -> &'static str {
        match self {
            MonodromyCase::F4 => "F4",
            MonodromyCase::F6 => "F6",
            MonodromyCase::F3 => "F3",
        }
    }

    /// (a, b) of the underlying equation.
    pub fn exponents(self) -> (BigRat, BigRat) {
        match self {
            MonodromyCase::F4 => (q(1, 4), q(1, 2)),
            MonodromyCase::F6 => (q(1, 6), q(1, 2)),
            MonodromyCase::F3 => (q(1, 3), q(1, 3)),
        }
    }

    /// The integral is F / divisor.
    pub fn divisor(self) -> i64 {
        match self {
            MonodromyCase::F4 => 2,
            MonodromyCase::F6 | MonodromyCase::F3 => 3,
        }
    }

    /// Constant the shifts are expressed in.
    pub fn unit(self) -> GammaConstant {
        match self {
            MonodromyCase::F4 => GammaConstant::C4,
            MonodromyCase::F6 => GammaConstant::PeriodE2,
            MonodromyCase::F3 => GammaConstant::PeriodE3,
        }
    }

    /// Gamma(a) Gamma(b) / Gamma(a + b) / divisor, in units of unit().
    /// Exact by reflection and duplication; unit_ratio_check confirms it.
    pub fn unit_ratio(self) -> Cyclo {
        match self {
            MonodromyCase::F4 | MonodromyCase::F6 => Cyclo::rational(q(1, 2)),
            MonodromyCase::F3 => Cyclo::sqrt3().scale(&q(1, 6)),
        }
    }
}

impl fmt::Display for MonodromyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MonodromyCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MonodromyCase::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse { what: "monodromy case", input: s.to_string() })
    }
}

/// Relative discrepancy between Gamma(a)Gamma(b)/Gamma(a+b)/divisor and
/// unit_ratio() * unit, both evaluated numerically.
pub fn unit_ratio_check(case: MonodromyCase, p: Prec) -> Result<HpReal> {
    let (a, b) = case.exponents();
    let k = gamma(&a, p)?.mul(&gamma(&b, p)?).div(&gamma(&(&a + &b), p)?).div_int(&case.divisor().into());
    let want = case.unit_ratio().to_hp(p).scale(&case.unit().value(p));
    Ok(want.rel_err(&HpComplex::real(k)))
}

/// One generator step of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub point: u8,
    pub power: i32,
}

/// Parse words like "s0^2 s1", "s0^-1s1^-1s0s1" or "σ₀²σ₁".
pub fn parse_word(w: &str) -> Result<Vec<Step>> {
    let s = w
        .replace('σ', "s")
        .replace('₀', "0")
        .replace('₁', "1")
        .replace("⁻¹", "^-1")
        .replace('²', "^2")
        .replace('³', "^3")
        .replace('*', " ");
    let err = || Error::Parse { what: "monodromy word", input: w.to_string() };
    let mut out = Vec::new();
    let mut it = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = it.next() {
        if c != 's' {
            return Err(err());
        }
        let point = match it.next() {
            Some('0') => 0,
            Some('1') => 1,
            _ => return Err(err()),
        };
        let mut power = 1;
        if it.peek() == Some(&'^') {
            it.next();
            let mut num = String::new();
            if it.peek() == Some(&'-') {
                num.push('-');
                it.next();
            }
            while let Some(d) = it.peek().filter(|d| d.is_ascii_digit()) {
                num.push(*d);
                it.next();
            }
            power = num.parse().map_err(|_| err())?;
        }
        out.push(Step { point, power });
    }
    Ok(out)
}

/// A printed or derived claim: continuation along `path` is F -> F + expected.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodClaim {
    pub path: String,
    pub expected: Cyclo,
    pub actual: AffineMonodromy,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyGroup {
    pub case: MonodromyCase,
    pub sigma0: AffineMonodromy,
    pub sigma1: AffineMonodromy,
}

impl MonodromyGroup {
    pub fn new(case: MonodromyCase) -> Self {
        let (a, b) = case.exponents();
        let beta = Cyclo::root_of_unity(&b).expect("exponent denominators divide 12");
        let sigma0 = AffineMonodromy::new(a, Cyclo::zero()).expect("root of unity");
        let shift = Cyclo::one().sub(&beta).mul(&case.unit_ratio());
        let sigma1 = AffineMonodromy::new(b, shift).expect("root of unity");
        MonodromyGroup { case, sigma0, sigma1 }
    }

    pub fn word(&self, w: &str) -> Result<AffineMonodromy> {
        let mut acc = AffineMonodromy::identity();
        for st in parse_word(w)? {
            let g = if st.point == 0 { &self.sigma0 } else { &self.sigma1 };
            let g = if st.power < 0 { g.inverse() } else { g.clone() };
            for _ in 0..st.power.unsigned_abs() {
                acc = acc.then(&g);
            }
        }
        Ok(acc)
    }

    /// (1 - e^(2 pi i a)) (1 - e^(2 pi i b)) Gamma(a)Gamma(b)/Gamma(a+b),
    /// the closed form of the commutator, in units.
    pub fn pochhammer_formula(&self) -> Cyclo {
        let (a, b) = self.case.exponents();
        let one = Cyclo::one();
        let ra = Cyclo::root_of_unity(&a).expect("root of unity");
        let rb = Cyclo::root_of_unity(&b).expect("root of unity");
        one.sub(&ra).mul(&one.sub(&rb)).mul(&self.case.unit_ratio())
    }

    pub fn claim(&self, path: &str, expected: Cyclo) -> Result<PeriodClaim> {
        let actual = self.word(path)?;
        let holds = actual.is_translation() && actual.shift == expected;
        Ok(PeriodClaim { path: path.to_string(), expected, actual, holds })
    }
}

/// The published period claims for one case, plus the loops that do
/// produce the generating periods.
#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub group: MonodromyGroup,
    pub unit: String,
    pub printed: Vec<PeriodClaim>,
    /// Generating periods from genuine loops.
    pub lattice: Vec<PeriodClaim>,
    pub pochhammer: PeriodClaim,
}

impl MonodromyReport {
    pub fn printed_hold(&self) -> bool {
        self.printed.iter().all(|c| c.holds)
    }
}

pub fn monodromy_group(case: MonodromyCase) -> MonodromyReport {
    let g = MonodromyGroup::new(case);
    let i = Cyclo::i();
    let w1 = Cyclo::w().add(&Cyclo::one());
    let c = |path: &str, e: Cyclo| g.claim(path, e).expect("fixed words parse");
    let half = q(1, 2);
    let (printed, lattice) = match case {
        MonodromyCase::F4 => (
            vec![c("s0^2 s1", Cyclo::one()), c("s0 s1 s0", i.clone())],
            vec![c("s0^2 s1", Cyclo::one()), c("s0 s1 s0", i.clone())],
        ),
        MonodromyCase::F6 => (
            vec![c("s0^3 s1", Cyclo::one()), c("s0^-1 s1 s0", w1.clone())],
            vec![c("s0^3 s1", Cyclo::one()), c("s0^2 s1 s0", w1.clone())],
        ),
        MonodromyCase::F3 => (
            vec![c("s0 s1 s0", i.clone()), c("s1^2 s0", i.mul(&w1))],
            vec![c("s0 s1 s0", i.scale(&half)), c("s1^2 s0", i.mul(&w1).scale(&half))],
        ),
    };
    let pochhammer_printed = match case {
        MonodromyCase::F4 => Cyclo::one().sub(&i),
        _ => g.pochhammer_formula(),
    };
    let pochhammer = c("s0^-1 s1^-1 s0 s1", pochhammer_printed);
    MonodromyReport { unit: case.unit().name().to_string(), group: g, printed, lattice, pochhammer }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let w = Cyclo::w();
        assert_eq!(w.mul(&w).add(&w).add(&Cyclo::one()), Cyclo::zero());
        assert_eq!(Cyclo::i().mul(&Cyclo::i()), Cyclo::rational(q(-1, 1)));
        let s = Cyclo::sqrt3();
        assert_eq!(s.mul(&s), Cyclo::rational(q(3, 1)));
        let z = Cyclo::root_of_unity(&q(1, 12)).unwrap();
        let mut acc = Cyclo::one();
        for _ in 0..12 {
            acc = acc.mul(&z);
        }
        assert_eq!(acc, Cyclo::one());
        assert_eq!(Cyclo::root_of_unity(&q(1, 4)).unwrap(), Cyclo::i());
        assert_eq!(Cyclo::root_of_unity(&q(1, 3)).unwrap(), w);
        assert!(Cyclo::root_of_unity(&q(1, 5)).is_err());
        let (re, im) = z.to_hp(Prec::digits(20)).to_c64();
        assert!((re - 3f64.sqrt() / 2.0).abs() < 1e-15 && (im - 0.5).abs() < 1e-15);
        assert_eq!(Cyclo::i().mul(&w.add(&Cyclo::one())).scale(&q(1, 2)).to_string(), "1/2*i+1/2*i*w");
    }

    #[test]
    fn affine_group_laws() {
        let g = MonodromyGroup::new(MonodromyCase::F3);
        let a = g.word("s0 s1^2").unwrap();
        let b = g.word("s1 s0^-1").unwrap();
        let c = g.sigma1.clone();
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        assert_eq!(a.compose(&a.inverse()), AffineMonodromy::identity());
        assert_eq!(g.word("").unwrap(), AffineMonodromy::identity());
        assert_eq!(g.word("s0^3").unwrap(), AffineMonodromy::identity());
        assert_eq!(parse_word("σ₀²σ₁").unwrap(), parse_word("s0^2 s1").unwrap());
        assert!(parse_word("s2").is_err());
    }

    #[test]
    fn quarter_case_matches_the_published_claims() {
        let r = monodromy_group(MonodromyCase::F4);
        assert!(r.printed_hold());
        assert!(r.pochhammer.holds);
        assert_eq!(r.group.pochhammer_formula(), Cyclo::one().sub(&Cyclo::i()));
        // sigma_0 F4 = i F4, sigma_1 F4 = C4 - F4
        assert_eq!(r.group.sigma0, AffineMonodromy::new(q(1, 4), Cyclo::zero()).unwrap());
        assert_eq!(r.group.sigma1, AffineMonodromy::new(q(1, 2), Cyclo::one()).unwrap());
    }

    #[test]
    fn sixth_and_third_cases() {
        let r = monodromy_group(MonodromyCase::F6);
        assert!(r.lattice.iter().all(|c| c.holds));
        assert!(r.printed[0].holds);
        // the printed second path changes sheet
        assert!(!r.printed[1].actual.is_translation());
        let r = monodromy_group(MonodromyCase::F3);
        assert!(r.lattice.iter().all(|c| c.holds));
        assert!(!r.printed_hold());
        for case in MonodromyCase::ALL {
            assert!(monodromy_group(case).pochhammer.holds);
        }
    }

    #[test]
    fn unit_ratios_are_right() {
        for case in MonodromyCase::ALL {
            let e = unit_ratio_check(case, Prec::digits(40)).unwrap();
            assert!(e.ilog2().is_none_or(|k| k < -120), "{case}: {e}");
        }
    }
}
