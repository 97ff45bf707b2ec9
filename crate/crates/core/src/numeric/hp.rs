//! Fixed-point reals and complexes on big integers: a value is m / 2^bits.
//!
//! Every operation rounds toward minus infinity, so each step costs at most
//! one unit in the last place. Callers carry guard bits through `Prec`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{BigRat, FieldElement, Ring};

/// Working precision: decimal digits requested plus guard bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prec {
    pub digits: u32,
    pub bits: u32,
}

impl Prec {
    /// `digits` significant decimal digits, plus 64 guard bits.
    pub fn digits(digits: u32) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
        Prec { digits, bits }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpReal {
    m: BigInt,
    bits: u32,
}

impl HpReal {
    pub fn zero(p: Prec) -> Self {
        HpReal { m: BigInt::zero(), bits: p.bits }
    }

    pub fn from_int(p: Prec, n: i64) -> Self {
        HpReal { m: BigInt::from(n) << p.bits, bits: p.bits }
    }

    pub fn from_bigint(p: Prec, n: &BigInt) -> Self {
        HpReal { m: n << p.bits, bits: p.bits }
    }

    pub fn from_rat(p: Prec, r: &BigRat) -> Self {
        HpReal { m: floor_div(&(r.numer() << p.bits), r.denom()), bits: p.bits }
    }

    pub fn from_f64(p: Prec, x: f64) -> Self {
        let r = BigRat::from_float(x).expect("finite float");
        Self::from_rat(p, &r)
    }

    pub fn prec(&self) -> Prec {
        Prec { digits: ((self.bits.saturating_sub(64)) as f64 / std::f64::consts::LOG2_10) as u32, bits: self.bits }
    }

    fn raw(&self, m: BigInt) -> Self {
        HpReal { m, bits: self.bits }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        self.raw(&self.m + &o.m)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.raw(&self.m - &o.m)
    }

    pub fn neg(&self) -> Self {
        self.raw(-&self.m)
    }

    pub fn abs(&self) -> Self {
        self.raw(self.m.abs())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.raw((&self.m * &o.m) >> self.bits)
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.m.is_zero(), "division by zero");
        self.raw(floor_div(&(&self.m << self.bits), &o.m))
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        self.raw(&self.m * n)
    }

    pub fn div_int(&self, n: &BigInt) -> Self {
        self.raw(floor_div(&self.m, n))
    }

    pub fn mul_rat(&self, r: &BigRat) -> Self {
        self.raw(floor_div(&(&self.m * r.numer()), r.denom()))
    }

    /// Multiply by 2^k.
    pub fn ldexp(&self, k: i64) -> Self {
        if k >= 0 {
            self.raw(&self.m << k as usize)
        } else {
            self.raw(&self.m >> (-k) as usize)
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.m.is_negative(), "square root of a negative number");
        self.raw((&self.m << self.bits).sqrt())
    }

    /// Position of the leading bit relative to 1: floor(log2 |x|), or None at 0.
    pub fn ilog2(&self) -> Option<i64> {
        (!self.m.is_zero()).then(|| self.m.bits() as i64 - 1 - self.bits as i64)
    }

    pub fn to_f64(&self) -> f64 {
        let nb = self.m.bits() as i64;
        let shift = (nb - 60).max(0);
        let top = (&self.m >> shift as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powi((shift - self.bits as i64) as i32)
    }

    pub fn cmp_value(&self, o: &Self) -> Ordering {
        self.m.cmp(&o.m)
    }

    /// exp(x) by argument reduction with ln 2 and halving, then Taylor.
    pub fn exp(&self) -> Self {
        let p = self.prec();
        let ln2 = ln2(p);
        let k = self.div(&ln2).m >> self.bits; // floor(x / ln 2)
        let r = self.sub(&ln2.mul_int(&k));
        let halvings = 12;
        let r = r.ldexp(-halvings);
        let one = HpReal::from_int(p, 1);
        let mut sum = one.clone();
        let mut term = one;
        let mut n = 1i64;
        loop {
            term = term.mul(&r).div_int(&BigInt::from(n));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            n += 1;
        }
        for _ in 0..halvings {
            sum = sum.mul(&sum);
        }
        sum.ldexp(k.to_i64().expect("exponent fits"))
    }

    /// Natural logarithm of a positive number.
    pub fn ln(&self) -> Self {
        assert!(self.m.is_positive(), "logarithm of a non-positive number");
        let p = self.prec();
        let k = self.ilog2().unwrap();
        let y = self.ldexp(-k); // in [1, 2)
        let one = HpReal::from_int(p, 1);
        let t = y.sub(&one).div(&y.add(&one));
        atanh_series(&t).ldexp(1).add(&ln2(p).mul_int(&BigInt::from(k)))
    }

    /// Real power of a positive base.
    pub fn powf(&self, e: &HpReal) -> Self {
        self.ln().mul(e).exp()
    }

    pub fn pow_rat(&self, r: &BigRat) -> Self {
        let p = self.prec();
        self.powf(&HpReal::from_rat(p, r))
    }

    /// atan(x) via halving until the Taylor series converges quickly.
    pub fn atan(&self) -> Self {
        let p = self.prec();
        let one = HpReal::from_int(p, 1);
        if self.abs().cmp_value(&one) == Ordering::Greater {
            let half_pi = pi(p).ldexp(-1);
            let r = one.div(self).atan();
            return if self.is_negative() { half_pi.neg().sub(&r) } else { half_pi.sub(&r) };
        }
        let mut x = self.clone();
        let halvings = 4;
        for _ in 0..halvings {
            x = x.div(&one.add(&one.add(&x.mul(&x)).sqrt()));
        }
        let x2 = x.mul(&x);
        let mut term = x.clone();
        let mut sum = x;
        let mut n = 1i64;
        loop {
            term = term.mul(&x2).neg();
            let t = term.div_int(&BigInt::from(2 * n + 1));
            if t.is_zero() {
                break;
            }
            sum = sum.add(&t);
            n += 1;
        }
        sum.ldexp(halvings)
    }

    /// Angle of the point (x, y) in (-pi, pi].
    pub fn atan2(y: &HpReal, x: &HpReal) -> HpReal {
        let p = y.prec();
        if x.is_zero() {
            let h = pi(p).ldexp(-1);
            return if y.is_negative() { h.neg() } else if y.is_zero() { HpReal::zero(p) } else { h };
        }
        let a = y.div(x).atan();
        if !x.is_negative() {
            a
        } else if y.is_negative() {
            a.sub(&pi(p))
        } else {
            a.add(&pi(p))
        }
    }

    /// (cos x, sin x).
    pub fn cos_sin(&self) -> (HpReal, HpReal) {
        let p = self.prec();
        let two_pi = pi(p).ldexp(1);
        let k = self.div(&two_pi).add(&HpReal::from_rat(p, &BigRat::new(1.into(), 2.into()))).m >> self.bits;
        let r = self.sub(&two_pi.mul_int(&k));
        let halvings = 10;
        let r = r.ldexp(-halvings);
        // e^{ir} by Taylor
        let one = HpReal::from_int(p, 1);
        let mut c = one.clone();
        let mut s = HpReal::zero(p);
        let mut term = HpComplex::new(one, HpReal::zero(p));
        let ir = HpComplex::new(HpReal::zero(p), r);
        let mut n = 1i64;
        loop {
            term = term.mul(&ir).div_int(&BigInt::from(n));
            if term.re.is_zero() && term.im.is_zero() {
                break;
            }
            c = c.add(&term.re);
            s = s.add(&term.im);
            n += 1;
        }
        let mut z = HpComplex::new(c, s);
        for _ in 0..halvings {
            z = z.mul(&z);
        }
        (z.re, z.im)
    }

    /// `digits` significant decimals in scientific notation.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.m.is_zero() {
            return "0".into();
        }
        let e10 = (self.to_f64().abs().log10().floor()) as i64;
        // scaled = |x| * 10^(digits - 1 - e10) as an integer
        let shift = digits as i64 - 1 - e10;
        let mut num = self.m.abs();
        let mut den = BigInt::one() << self.bits;
        if shift >= 0 {
            num *= BigInt::from(10).pow(shift as u32);
        } else {
            den *= BigInt::from(10).pow((-shift) as u32);
        }
        let q = (&num + (&den >> 1usize)) / &den;
        let mut s = q.to_string();
        let mut e = e10;
        if s.len() > digits {
            s.truncate(digits);
            e += 1;
        }
        let sign = if self.m.sign() == Sign::Minus { "-" } else { "" };
        if s.len() > 1 {
            format!("{sign}{}.{}e{e}", &s[..1], &s[1..])
        } else {
            format!("{sign}{s}e{e}")
        }
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(self.prec().digits.max(1) as usize))
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

fn atanh_series(t: &HpReal) -> HpReal {
    let t2 = t.mul(t);
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut n = 1i64;
    loop {
        term = term.mul(&t2);
        let s = term.div_int(&BigInt::from(2 * n + 1));
        if s.is_zero() {
            break;
        }
        sum = sum.add(&s);
        n += 1;
    }
    sum
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(p: Prec) -> HpReal {
    let third = HpReal::from_rat(p, &BigRat::new(1.into(), 3.into()));
    atanh_series(&third).ldexp(1)
}

/// pi by Machin's formula, 16 atan(1/5) - 4 atan(1/239).
pub fn pi(p: Prec) -> HpReal {
    let acot = |n: i64| {
        let x = HpReal::from_rat(p, &BigRat::new(1.into(), n.into()));
        let x2 = x.mul(&x);
        let mut term = x.clone();
        let mut sum = x;
        let mut k = 1i64;
        loop {
            term = term.mul(&x2).neg();
            let s = term.div_int(&BigInt::from(2 * k + 1));
            if s.is_zero() {
                break;
            }
            sum = sum.add(&s);
            k += 1;
        }
        sum
    };
    acot(5).mul_int(&BigInt::from(16)).sub(&acot(239).mul_int(&BigInt::from(4)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpComplex {
    pub re: HpReal,
    pub im: HpReal,
}

impl HpComplex {
    pub fn new(re: HpReal, im: HpReal) -> Self {
        HpComplex { re, im }
    }

    pub fn real(re: HpReal) -> Self {
        let p = re.prec();
        HpComplex { re, im: HpReal::zero(p) }
    }

    pub fn zero(p: Prec) -> Self {
        Self::real(HpReal::zero(p))
    }

    pub fn one(p: Prec) -> Self {
        Self::real(HpReal::from_int(p, 1))
    }

    pub fn i(p: Prec) -> Self {
        HpComplex { re: HpReal::zero(p), im: HpReal::from_int(p, 1) }
    }

    pub fn from_rat(p: Prec, r: &BigRat) -> Self {
        Self::real(HpReal::from_rat(p, r))
    }

    pub fn from_f64(p: Prec, re: f64, im: f64) -> Self {
        HpComplex { re: HpReal::from_f64(p, re), im: HpReal::from_f64(p, im) }
    }

    /// An element of Q(i) or Q(w), with w = (-1 + i sqrt 3)/2.
    pub fn from_field(p: Prec, c: &FieldElement) -> Self {
        let a = HpReal::from_rat(p, c.a());
        let b = HpReal::from_rat(p, c.b());
        match c.ring() {
            Ring::Gauss => HpComplex { re: a, im: b },
            Ring::Eisenstein => {
                let s3 = HpReal::from_int(p, 3).sqrt();
                HpComplex { re: a.sub(&b.ldexp(-1)), im: b.mul(&s3).ldexp(-1) }
            }
        }
    }

    pub fn prec(&self) -> Prec {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        HpComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HpComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        HpComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        HpComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        HpComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, r: &HpReal) -> Self {
        HpComplex { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn mul_rat(&self, r: &BigRat) -> Self {
        HpComplex { re: self.re.mul_rat(r), im: self.im.mul_rat(r) }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        HpComplex { re: self.re.mul_int(n), im: self.im.mul_int(n) }
    }

    pub fn div_int(&self, n: &BigInt) -> Self {
        HpComplex { re: self.re.div_int(n), im: self.im.div_int(n) }
    }

    pub fn norm_sqr(&self) -> HpReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Multiply by 2^k.
    pub fn ldexp(&self, k: i64) -> Self {
        HpComplex { re: self.re.ldexp(k), im: self.im.ldexp(k) }
    }

    /// |self|, rescaled first so tiny values do not square to zero.
    pub fn abs(&self) -> HpReal {
        match self.ilog2() {
            None => HpReal::zero(self.prec()),
            Some(k) => self.ldexp(-k).norm_sqr().sqrt().ldexp(k),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let k = o.ilog2().expect("division by zero");
        let o = o.ldexp(-k);
        let d = o.norm_sqr();
        let n = self.mul(&o.conj());
        HpComplex { re: n.re.div(&d), im: n.im.div(&d) }.ldexp(-k)
    }

    pub fn inv(&self) -> Self {
        Self::one(self.prec()).div(self)
    }

    /// Principal logarithm, imaginary part in (-pi, pi].
    pub fn ln(&self) -> Self {
        HpComplex { re: self.norm_sqr().ln().ldexp(-1), im: HpReal::atan2(&self.im, &self.re) }
    }

    pub fn exp(&self) -> Self {
        let r = self.re.exp();
        let (c, s) = self.im.cos_sin();
        HpComplex { re: r.mul(&c), im: r.mul(&s) }
    }

    /// Principal branch of self^r.
    pub fn pow_rat(&self, r: &BigRat) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.ln().mul_rat(r).exp()
    }

    pub fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Largest binary exponent of the two parts, for cheap magnitude tests.
    pub fn ilog2(&self) -> Option<i64> {
        match (self.re.ilog2(), self.im.ilog2()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// |self - o| / |o|.
    pub fn rel_err(&self, o: &Self) -> HpReal {
        let d = self.sub(o).abs();
        let n = o.abs();
        if n.is_zero() {
            d
        } else {
            d.div(&n)
        }
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.prec().digits.max(1) as usize;
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re.to_sci(d), self.im.neg().to_sci(d))
        } else {
            write!(f, "{} + {}i", self.re.to_sci(d), self.im.to_sci(d))
        }
    }
}

/// Evaluate a polynomial with Q(i) or Q(w) coefficients.
pub fn eval_poly(poly: &crate::poly::Poly, z: &HpComplex) -> HpComplex {
    let p = z.prec();
    let mut acc = HpComplex::zero(p);
    for c in poly.coeffs().iter().rev() {
        acc = acc.mul(z).add(&HpComplex::from_field(p, c));
    }
    acc
}

pub fn eval_map(m: &crate::poly::RationalMap, z: &HpComplex) -> Option<HpComplex> {
    let d = eval_poly(m.den(), z);
    (!d.is_zero()).then(|| eval_poly(m.num(), z).div(&d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &HpReal, b: &str, digits: i64) {
        let want = HpReal::from_rat(a.prec(), &decimal(b));
        let err = a.sub(&want).abs();
        assert!(err.ilog2().is_none_or(|e| (e as f64) < -(digits as f64) * 3.32), "{a} vs {b}");
    }

    fn decimal(s: &str) -> BigRat {
        match s.split_once('.') {
            Some((i, f)) => {
                let den = BigInt::from(10).pow(f.len() as u32);
                BigRat::new(format!("{i}{f}").parse::<BigInt>().unwrap(), den)
            }
            None => crate::arith::parse_rat(s).unwrap(),
        }
    }

    #[test]
    fn constants_and_elementary_functions() {
        let p = Prec::digits(50);
        close(&pi(p), "3.14159265358979323846264338327950288419716939937510", 48);
        close(&ln2(p), "0.69314718055994530941723212145817656807550013436025", 48);
        let one = HpReal::from_int(p, 1);
        close(&one.exp(), "2.71828182845904523536028747135266249775724709369995", 48);
        let two = HpReal::from_int(p, 2);
        close(&two.sqrt(), "1.41421356237309504880168872420969807856967187537694", 48);
        close(&HpReal::from_int(p, 10).ln(), "2.30258509299404568401799145468436420760110148862877", 48);
        close(&one.atan(), "0.78539816339744830961566084581987572104929234984377", 48);
        let (c, s) = HpReal::from_int(p, 1).cos_sin();
        close(&c, "0.54030230586813971740093660744297660373231042061792", 48);
        close(&s, "0.84147098480789650665250232163029899962256306079837", 48);
        let back = HpReal::from_rat(p, &BigRat::new(7.into(), 3.into())).ln().exp();
        close(&back, "7/3", 48);
    }

    #[test]
    fn complex_branches() {
        let p = Prec::digits(40);
        let m1 = HpComplex::from_rat(p, &BigRat::from_integer((-1).into()));
        let r = m1.pow_rat(&BigRat::new(1.into(), 2.into()));
        close(&r.im, "1", 38);
        close(&r.re, "0", 38);
        let w = HpComplex::from_field(p, &FieldElement::gen(Ring::Eisenstein));
        let w3 = w.pow_u(3);
        close(&w3.re, "1", 38);
        close(&w3.im, "0", 38);
        assert_eq!(HpReal::from_int(p, -3).to_sci(3), "-3.00e0");
    }
}
