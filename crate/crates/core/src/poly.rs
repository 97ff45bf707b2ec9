//! Dense univariate polynomials and reduced rational functions over Q(i) or Q(w).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{BigRat, FieldElement, Ring};
use crate::error::{Error, Result};

/// Polynomial with coefficients ascending by degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(ring: Ring, mut coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.ring() == ring));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ring, coeffs }
    }

    pub fn from_ints(ring: Ring, coeffs: &[i64]) -> Self {
        Self::new(ring, coeffs.iter().map(|&c| FieldElement::from_int(ring, c)).collect())
    }

    pub fn zero(ring: Ring) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(FieldElement::one(ring))
    }

    pub fn constant(c: FieldElement) -> Self {
        let ring = c.ring();
        Self::new(ring, vec![c])
    }

    /// The polynomial z.
    pub fn z(ring: Ring) -> Self {
        Self::monomial(FieldElement::one(ring), 1)
    }

    /// 1 - z.
    pub fn one_minus_z(ring: Ring) -> Self {
        Self::from_ints(ring, &[1, -1])
    }

    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let ring = c.ring();
        let mut coeffs = vec![FieldElement::zero(ring); k];
        coeffs.push(c);
        Self::new(ring, coeffs)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` standing in for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0; for bookkeeping only.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| FieldElement::zero(self.ring))
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(|| FieldElement::zero(self.ring))
    }

    /// Value at z = 0.
    pub fn at_zero(&self) -> FieldElement {
        self.coeff(0)
    }

    /// Largest k with z^k dividing self (0 for the zero polynomial).
    pub fn z_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Self::new(self.ring, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&FieldElement::from_int(self.ring, n))
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::zero(self.ring); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.ring, coeffs)
    }

    /// Divide by z^k, which must divide self.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("z^{k} does not divide")));
        }
        Ok(Self::new(self.ring, self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::new(self.ring, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring));
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![FieldElement::zero(self.ring); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::new(self.ring, out))
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

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring.name(), other.ring.name())))
        }
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(self.ring), self.clone()));
        }
        let inv_lead = d.lead().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(self.ring); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * dj);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(self.ring, quot), Self::new(self.ring, rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!("remainder of degree {}", r.deg0())))
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        if a.deg0() < b.deg0() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.ring,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&BigRat::from_integer(BigInt::from(k))))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// self(inner(z)).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(self.ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// z^deg * self(1/z) for a chosen formal degree `deg >= degree`.
    pub fn reverse(&self, deg: usize) -> Self {
        let mut coeffs = vec![FieldElement::zero(self.ring); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - k] = c.clone();
        }
        Self::new(self.ring, coeffs)
    }

    /// self(z^k).
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::zero(self.ring); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(self.ring, coeffs)
    }

    /// self(w(z)) where only powers z^{k*m} occur; returns the polynomial in z^k, if so.
    pub fn deflate(&self, k: usize) -> Option<Self> {
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % k != 0 && !c.is_zero())
        {
            return None;
        }
        Some(Self::new(self.ring, self.coeffs.iter().step_by(k).cloned().collect()))
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
    }

    /// Pairwise-coprime squarefree factors with multiplicities (Yun's algorithm).
    /// The product of factor^mult equals self up to a constant.
    pub fn squarefree_multiplicities(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.deg0() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = fp.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while b.deg0() > 0 {
            let a = b.gcd(&d);
            if a.deg0() > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// The monic g with g^k equal to self up to a constant, if there is one.
    pub fn monic_root(&self, k: usize) -> Option<Poly> {
        if self.is_zero() || k == 0 {
            return None;
        }
        let mut out = Poly::one(self.ring);
        for (factor, mult) in self.squarefree_multiplicities() {
            if mult % k != 0 {
                return None;
            }
            out = &out * &factor.pow((mult / k) as u32);
        }
        Some(out)
    }

    /// Parse an expression in z with +, -, *, ^, parentheses, implicit products,
    /// rationals, and the generator `i` or `w`.
    pub fn parse(input: &str, ring: Ring) -> Result<Self> {
        let mut p = ExprParser { chars: input.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, ring, input };
        let v = p.sum()?;
        if p.pos != p.chars.len() {
            return Err(p.err());
        }
        Ok(v)
    }

    /// Text rendering in z, highest degree first.
    pub fn to_text(&self) -> String {
        render(self, "z", false)
    }

    pub fn to_latex(&self) -> String {
        render(self, "z", true)
    }
}

fn coeff_text(c: &FieldElement, latex: bool) -> String {
    let sym = match (c.ring(), latex) {
        (Ring::Gauss, _) => "i",
        (Ring::Eisenstein, true) => "\\omega",
        (Ring::Eisenstein, false) => "w",
    };
    let rat = |r: &BigRat| -> String {
        if latex && !r.is_integer() {
            let sign = if r.is_negative() { "-" } else { "" };
            format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
        } else if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    };
    let (a, b) = (c.a(), c.b());
    if b.is_zero() {
        return rat(a);
    }
    let bpart = if b.is_one() {
        sym.to_string()
    } else if (-b).is_one() {
        format!("-{sym}")
    } else if latex {
        format!("{}{sym}", rat(b))
    } else {
        format!("{}*{sym}", rat(b))
    };
    if a.is_zero() {
        bpart
    } else if b.is_negative() {
        format!("{}{}", rat(a), bpart)
    } else {
        format!("{}+{}", rat(a), bpart)
    }
}

fn render(p: &Poly, var: &str, latex: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ if latex => format!("{var}^{{{k}}}"),
            _ => format!("{var}^{k}"),
        };
        let compound = !c.a().is_zero() && !c.b().is_zero();
        let mut text = coeff_text(c, latex);
        let negative = !compound && text.starts_with('-');
        if negative {
            text.remove(0);
        }
        let body = if k == 0 {
            if compound { format!("({text})") } else { text }
        } else if !compound && text == "1" {
            mono
        } else if compound {
            format!("({text}){}{mono}", if latex { "" } else { "*" })
        } else {
            format!("{text}{}{mono}", if latex { "" } else { "*" })
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: Ring,
    input: &'a str,
}

impl ExprParser<'_> {
    fn err(&self) -> Error {
        Error::Parse { what: "polynomial", input: self.input.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -self.product()?
            }
            Some('+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                '-' | '\u{2212}' => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err());
                    }
                    let inv = d.lead().inv()?;
                    acc = acc.scale(&inv);
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(v)
            }
            Some('z') | Some('x') => {
                self.pos += 1;
                Ok(Poly::z(self.ring))
            }
            Some('i') if self.ring == Ring::Gauss => {
                self.pos += 1;
                Ok(Poly::constant(FieldElement::gen(self.ring)))
            }
            Some('w') if self.ring == Ring::Eisenstein => {
                self.pos += 1;
                Ok(Poly::constant(FieldElement::gen(self.ring)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: BigInt = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| self.err())?;
                Ok(Poly::constant(FieldElement::from_rat(self.ring, BigRat::from_integer(n))))
            }
            _ => Err(self.err()),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.ring, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                self.$try(rhs).expect(concat!("polynomial ", stringify!($m), " across rings"))
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

/// Reduced quotient num/den with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: Poly,
    den: Poly,
}

impl RationalMap {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.ring() != den.ring() {
            return Err(Error::RingMismatch("rational map".into()));
        }
        if num.is_zero() {
            return Ok(RationalMap { num, den: Poly::one(den.ring()) });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg0() > 0 {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        } else {
            (num, den)
        };
        let lc = den.lead().inv()?;
        Ok(RationalMap { num: num.scale(&lc), den: den.scale(&lc) })
    }

    /// prod num_i^e_i / prod den_j^f_j, reduced factor against factor so
    /// the full products never meet a gcd.
    pub fn from_factors(ring: Ring, num: &[(Poly, u32)], den: &[(Poly, u32)]) -> Result<Self> {
        let mut num: Vec<(Poly, u32)> = num.to_vec();
        let mut den: Vec<(Poly, u32)> = den.to_vec();
        'outer: loop {
            for i in 0..num.len() {
                for j in 0..den.len() {
                    let (a, ea) = num[i].clone();
                    let (b, eb) = den[j].clone();
                    if ea == 0 || eb == 0 || a.is_zero() {
                        continue;
                    }
                    let g = a.gcd(&b);
                    if g.deg0() == 0 {
                        continue;
                    }
                    let m = ea.min(eb);
                    num[i] = (a.exact_div(&g)?, ea);
                    den[j] = (b.exact_div(&g)?, eb);
                    num.push((g.clone(), ea - m));
                    den.push((g, eb - m));
                    continue 'outer;
                }
            }
            break;
        }
        let prod = |fs: &[(Poly, u32)]| fs.iter().fold(Poly::one(ring), |acc, (f, e)| &acc * &f.pow(*e));
        let (n, d) = (prod(&num), prod(&den));
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if n.is_zero() {
            return Ok(RationalMap { num: n, den: Poly::one(ring) });
        }
        let lc = d.lead().inv()?;
        Ok(RationalMap { num: n.scale(&lc), den: d.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        let ring = p.ring();
        RationalMap { num: p, den: Poly::one(ring) }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn identity(ring: Ring) -> Self {
        Self::from_poly(Poly::z(ring))
    }

    pub fn ring(&self) -> Ring {
        self.num.ring()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn eval(&self, x: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        self.num.eval(x).try_div(&d).ok()
    }

    /// self(inner(z)).
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        let k = self.degree();
        let a = &inner.num;
        let b = &inner.den;
        let homog = |p: &Poly| -> Poly {
            let mut acc = Poly::zero(p.ring());
            let apow: Vec<Poly> = std::iter::successors(Some(Poly::one(p.ring())), |x| Some(x * a)).take(k + 1).collect();
            let bpow: Vec<Poly> = std::iter::successors(Some(Poly::one(p.ring())), |x| Some(x * b)).take(k + 1).collect();
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&apow[i] * &bpow[k - i]).scale(c);
                }
            }
            acc
        };
        RationalMap::new(homog(&self.num), homog(&self.den))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return RationalMap::new(&self.num + &other.num, self.den.clone());
        }
        RationalMap::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_map())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        // cross-cancel first to keep the gcd small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1)?;
        let d2 = other.den.exact_div(&g1)?;
        let n2 = other.num.exact_div(&g2)?;
        let d1 = self.den.exact_div(&g2)?;
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.lead().inv()?;
        Ok(RationalMap { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.lead().inv()?;
        Ok(RationalMap { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    pub fn neg_map(&self) -> Self {
        RationalMap { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        RationalMap { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalMap { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Multiply by a polynomial.
    pub fn mul_poly(&self, p: &Poly) -> Result<Self> {
        self.try_mul(&RationalMap::from_poly(p.clone()))
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_text();
        }
        format!("({})/({})", self.num.to_text(), self.den.to_text())
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! map_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&RationalMap> for &RationalMap {
            type Output = RationalMap;
            fn $m(self, rhs: &RationalMap) -> RationalMap {
                self.$try(rhs).expect(concat!("rational map ", stringify!($m)))
            }
        }
    };
}

map_binop!(Add, add, try_add);
map_binop!(Sub, sub, try_sub);
map_binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gp(s: &str) -> Poly {
        Poly::parse(s, Ring::Gauss).unwrap()
    }

    #[test]
    fn parser_and_printer() {
        let p = gp("1+(2i-1)z");
        assert_eq!(p.coeffs().len(), 2);
        assert_eq!(p.at_zero(), FieldElement::one(Ring::Gauss));
        assert_eq!(gp("(z+1)^2"), gp("z^2+2z+1"));
        assert_eq!(gp("3/2 z"), Poly::monomial(FieldElement::parse("3/2", Some(Ring::Gauss)).unwrap(), 1));
        assert_eq!(gp(&p.to_text()), p);
        let e = Poly::parse("(2-2w)(1+8z)", Ring::Eisenstein).unwrap();
        assert_eq!(Poly::parse(&e.to_text(), Ring::Eisenstein).unwrap(), e);
        assert!(Poly::parse("1+", Ring::Gauss).is_err());
        assert_eq!(gp("-1/5-2/5i").to_latex(), "(-\\frac{1}{5}-\\frac{2}{5}i)");
        assert_eq!(gp("z-3/4").to_latex(), "z - \\frac{3}{4}");
    }

    #[test]
    fn gcd_and_division() {
        assert_eq!(gp("z^2-1").gcd(&gp("z-1")), gp("z-1"));
        assert_eq!(gp("z^2+2z+1").exact_div(&gp("z+1")).unwrap(), gp("z+1"));
        assert!(matches!(gp("z^2+1").exact_div(&gp("z+2")), Err(Error::InexactDivision(_))));
        assert_eq!(gp("z^2+1").gcd(&gp("z-i")), gp("z-i"));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(gp("(z+1)^2").squarefree_multiplicities(), vec![(gp("z+1"), 2)]);
        assert_eq!(gp("z(z-1)^2").squarefree_multiplicities(), vec![(gp("z"), 1), (gp("z-1"), 2)]);
        let phi = RationalMap::new(gp("16z(z-1)^2"), gp("(z+1)^4")).unwrap();
        assert_eq!(phi.num().squarefree_multiplicities(), vec![(gp("z"), 1), (gp("z-1"), 2)]);
    }

    #[test]
    fn rational_map_reduction() {
        let m = RationalMap::new(gp("2z^2-2"), gp("4z-4")).unwrap();
        assert_eq!(m.num(), &gp("1/2 z + 1/2"));
        assert!(m.den().is_one());
        let phi = RationalMap::new(gp("-4z"), gp("(z-1)^2")).unwrap();
        let back = phi.compose(&RationalMap::identity(Ring::Gauss)).unwrap();
        assert_eq!(back, phi);
        assert_eq!(phi.degree(), 2);
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-6i64..6, -6i64..6), 0..=max_deg + 1).prop_map(|cs| {
            Poly::new(
                Ring::Gauss,
                cs.into_iter()
                    .map(|(a, b)| {
                        FieldElement::new(Ring::Gauss, BigRat::from_integer(a.into()), BigRat::from_integer(b.into()))
                    })
                    .collect(),
            )
        })
    }

    fn arb_point() -> impl Strategy<Value = FieldElement> {
        (-20i64..20, 1i64..7, -20i64..20).prop_map(|(a, d, b)| {
            FieldElement::new(Ring::Eisenstein, BigRat::new(a.into(), d.into()), BigRat::from_integer(b.into()))
        })
    }

    fn to_eis(p: &Poly) -> Poly {
        Poly::new(
            Ring::Eisenstein,
            p.coeffs().iter().map(|c| FieldElement::new(Ring::Eisenstein, c.a().clone(), c.b().clone())).collect(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn gcd_divides_both(p in arb_poly(8), q in arb_poly(8)) {
            prop_assume!(!p.is_zero() || !q.is_zero());
            let g = p.gcd(&q);
            prop_assert!(g.lead().is_one());
            prop_assert!(g.divides(&p));
            prop_assert!(g.divides(&q));
        }

        #[test]
        fn degree_of_product(p in arb_poly(8), q in arb_poly(8)) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            prop_assert_eq!((&p * &q).degree(), Some(p.deg0() + q.deg0()));
        }

        #[test]
        fn squarefree_reconstructs(a in arb_poly(3), b in arb_poly(2), c in arb_poly(2)) {
            let p = &(&a * &b.pow(2)) * &c.pow(3);
            prop_assume!(p.deg0() > 0);
            let parts = p.squarefree_multiplicities();
            let mut prod = Poly::one(Ring::Gauss);
            for (f, m) in &parts {
                prod = &prod * &f.pow(*m as u32);
            }
            prop_assert_eq!(prod, p.monic());
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    prop_assert!(parts[i].0.gcd(&parts[j].0).is_one());
                }
            }
        }

        #[test]
        fn compose_respects_eval(p in arb_poly(4), q in arb_poly(3), xs in proptest::collection::vec(arb_point(), 50)) {
            let (p, q) = (to_eis(&p), to_eis(&q));
            let pq = p.compose(&q);
            for x in xs {
                prop_assert_eq!(pq.eval(&x), p.eval(&q.eval(&x)));
            }
        }
    }
}
