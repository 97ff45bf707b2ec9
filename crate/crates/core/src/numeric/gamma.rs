//! Gamma at positive rationals by the Stirling series with exact Bernoulli
//! numbers, and the AGM closed forms for Gamma(1/4) and Gamma(1/3) used as an
//! independent cross-check. Nothing here touches hypergeometric series.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hp::{pi, HpReal, Prec};
use crate::arith::BigRat;
use crate::error::{Error, Result};

fn q(a: i64, b: i64) -> BigRat {
    BigRat::new(a.into(), b.into())
}

/// B_0 .. B_n exactly.
pub fn bernoulli(n: usize) -> Vec<BigRat> {
    let mut b = vec![BigRat::one()];
    for m in 1..=n {
        // B_m = -1/(m+1) sum_{k<m} C(m+1, k) B_k
        let mut binom = BigInt::one();
        let mut acc = BigRat::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRat::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRat::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// ln Gamma(w) for a large positive w by the asymptotic series.
fn ln_gamma_asymptotic(w: &HpReal, bern: &[BigRat]) -> HpReal {
    let p = w.prec();
    let half = q(1, 2);
    let two_pi = pi(p).ldexp(1);
    let mut acc = w.sub(&HpReal::from_rat(p, &half)).mul(&w.ln()).sub(w).add(&two_pi.ln().ldexp(-1));
    let w2 = w.mul(w);
    let mut wpow = w.clone(); // w^(2k-1)
    let cutoff = -(p.bits as i64) - 8;
    let mut last = None;
    for k in 1..bern.len() / 2 {
        let b = &bern[2 * k];
        let c = b / BigRat::from_integer(BigInt::from((2 * k) * (2 * k - 1)));
        let term = HpReal::from_rat(p, &c).div(&wpow);
        let mag = term.ilog2();
        acc = acc.add(&term);
        match mag {
            None => break,
            Some(m) if m < cutoff => break,
            Some(m) => {
                if let Some(prev) = last {
                    assert!(m <= prev + 1, "Stirling series diverging; raise the shift");
                }
                last = Some(m);
            }
        }
        wpow = wpow.mul(&w2);
    }
    acc
}

/// Gamma(x) for rational x > 0.
pub fn gamma(x: &BigRat, p: Prec) -> Result<HpReal> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("gamma at non-positive {x}")));
    }
    // shift so that the asymptotic series reaches 2^-bits
    let shift = (p.bits as i64 / 6 + 10) as usize;
    let bern = bernoulli(2 * shift + 2);
    let w = x + BigRat::from_integer(BigInt::from(shift));
    let lg = ln_gamma_asymptotic(&HpReal::from_rat(p, &w), &bern);
    let mut rising = BigRat::one();
    for j in 0..shift {
        rising *= x + BigRat::from_integer(BigInt::from(j));
    }
    Ok(lg.exp().div(&HpReal::from_rat(p, &rising)))
}

/// Arithmetic-geometric mean of positive reals.
pub fn agm(a: &HpReal, b: &HpReal) -> HpReal {
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..200 {
        let an = a.add(&b).ldexp(-1);
        let bn = a.mul(&b).sqrt();
        let d = an.sub(&bn).abs();
        a = an;
        b = bn;
        if d.ilog2().is_none_or(|e| e < -(a.prec().bits as i64) + 4) {
            break;
        }
    }
    a
}

/// Gamma(1/4) = ((2 pi)^(3/2) / AGM(1, sqrt 2))^(1/2).
pub fn gamma_quarter_agm(p: Prec) -> HpReal {
    let two_pi = pi(p).ldexp(1);
    let one = HpReal::from_int(p, 1);
    let m = agm(&one, &HpReal::from_int(p, 2).sqrt());
    two_pi.mul(&two_pi.sqrt()).div(&m).sqrt()
}

/// Gamma(1/3)^3 = 2^(4/3) pi^2 / (3^(1/4) AGM(1, cos(pi/12))).
pub fn gamma_third_agm(p: Prec) -> HpReal {
    let pi = pi(p);
    let one = HpReal::from_int(p, 1);
    let s6 = HpReal::from_int(p, 6).sqrt();
    let s2 = HpReal::from_int(p, 2).sqrt();
    let kp = s6.add(&s2).ldexp(-2);
    let m = agm(&one, &kp);
    let cube = HpReal::from_int(p, 2)
        .pow_rat(&q(4, 3))
        .mul(&pi)
        .mul(&pi)
        .div(&HpReal::from_int(p, 3).pow_rat(&q(1, 4)))
        .div(&m);
    cube.pow_rat(&q(1, 3))
}

/// Named constants that show up in the connection formulas and periods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaConstant {
    Pi,
    /// Gamma(1/4).
    G14,
    /// Gamma(1/3).
    G13,
    /// sqrt(2 pi).
    Sqrt2Pi,
    /// Gamma(1/4)^2 / sqrt(2 pi).
    C4,
    /// Gamma(1/4)^2 / (2 sqrt(2 pi)).
    Spec144,
    /// 3 Gamma(1/3)^3 / (2^(7/3) pi).
    Spec126,
    /// Gamma(1/3)^3 / (2 sqrt 3 pi).
    Spec333,
    /// Gamma(1/3)^3 / (2^(1/3) pi).
    PeriodE2,
    /// Gamma(1/3)^3 / pi, the modulus of the printed E3 period.
    PeriodE3,
}

impl GammaConstant {
    pub const ALL: [GammaConstant; 10] = [
        GammaConstant::Pi,
        GammaConstant::G14,
        GammaConstant::G13,
        GammaConstant::Sqrt2Pi,
        GammaConstant::C4,
        GammaConstant::Spec144,
        GammaConstant::Spec126,
        GammaConstant::Spec333,
        GammaConstant::PeriodE2,
        GammaConstant::PeriodE3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GammaConstant::Pi => "pi",
            GammaConstant::G14 => "G14",
            GammaConstant::G13 => "G13",
            GammaConstant::Sqrt2Pi => "sqrt2pi",
            GammaConstant::C4 => "C4",
            GammaConstant::Spec144 => "spec144",
            GammaConstant::Spec126 => "spec126",
            GammaConstant::Spec333 => "spec333",
            GammaConstant::PeriodE2 => "period_e2",
            GammaConstant::PeriodE3 => "period_e3",
        }
    }

    /// Value from the Stirling evaluation of Gamma.
    pub fn value(self, p: Prec) -> HpReal {
        let g = |x: BigRat| gamma(&x, p).expect("positive argument");
        let pi = pi(p);
        let s2pi = pi.ldexp(1).sqrt();
        match self {
            GammaConstant::Pi => pi,
            GammaConstant::G14 => g(q(1, 4)),
            GammaConstant::G13 => g(q(1, 3)),
            GammaConstant::Sqrt2Pi => s2pi,
            GammaConstant::C4 => {
                let g4 = g(q(1, 4));
                g4.mul(&g4).div(&s2pi)
            }
            GammaConstant::Spec144 => GammaConstant::C4.value(p).ldexp(-1),
            GammaConstant::Spec126 => {
                let g3 = g(q(1, 3));
                g3.mul(&g3).mul(&g3).mul_int(&3.into()).div(&HpReal::from_int(p, 2).pow_rat(&q(7, 3))).div(&pi)
            }
            GammaConstant::Spec333 => {
                let g3 = g(q(1, 3));
                g3.mul(&g3).mul(&g3).div(&HpReal::from_int(p, 3).sqrt().ldexp(1)).div(&pi)
            }
            GammaConstant::PeriodE2 => {
                let g3 = g(q(1, 3));
                g3.mul(&g3).mul(&g3).div(&HpReal::from_int(p, 2).pow_rat(&q(1, 3))).div(&pi)
            }
            GammaConstant::PeriodE3 => {
                let g3 = g(q(1, 3));
                g3.mul(&g3).mul(&g3).div(&pi)
            }
        }
    }
}

impl fmt::Display for GammaConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GammaConstant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GammaConstant::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse { what: "gamma constant", input: s.to_string() })
    }
}

/// Self-validation of the Gamma evaluator: reflection at 1/4 and 1/3,
/// Legendre duplication at 1/4 and 1/6, and the AGM closed forms. Returns
/// the largest relative discrepancy.
pub fn self_check(p: Prec) -> HpReal {
    let g = |x: BigRat| gamma(&x, p).expect("positive argument");
    let pi = pi(p);
    let mut worst = HpReal::zero(p);
    let mut track = |a: HpReal, b: HpReal| {
        let e = a.sub(&b).abs().div(&b.abs());
        if e.cmp_value(&worst).is_gt() {
            worst = e;
        }
    };
    // Gamma(1/2)^2 = pi
    let h = g(q(1, 2));
    track(h.mul(&h), pi.clone());
    // Gamma(1/4) Gamma(3/4) = pi sqrt 2
    track(g(q(1, 4)).mul(&g(q(3, 4))), pi.mul(&HpReal::from_int(p, 2).sqrt()));
    // Gamma(1/3) Gamma(2/3) = 2 pi / sqrt 3
    track(g(q(1, 3)).mul(&g(q(2, 3))), pi.ldexp(1).div(&HpReal::from_int(p, 3).sqrt()));
    // Gamma(x) Gamma(x + 1/2) = 2^(1 - 2x) sqrt(pi) Gamma(2x)
    for x in [q(1, 4), q(1, 6)] {
        let lhs = g(x.clone()).mul(&g(&x + q(1, 2)));
        let two_x = &x * BigRat::from_integer(2.into());
        let rhs = HpReal::from_int(p, 2).pow_rat(&(BigRat::one() - &two_x)).mul(&pi.sqrt()).mul(&g(two_x));
        track(lhs, rhs);
    }
    track(g(q(1, 4)), gamma_quarter_agm(p));
    track(g(q(1, 3)), gamma_third_agm(p));
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(12);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[3], BigRat::zero());
        assert_eq!(b[12], q(-691, 2730));
    }

    #[test]
    fn gamma_agrees_with_closed_forms() {
        let p = Prec::digits(45);
        let worst = self_check(p);
        assert!(worst.ilog2().is_none_or(|e| e < -150), "{worst}");
        assert_eq!(GammaConstant::G14.value(Prec::digits(20)).to_sci(16), "3.625609908221908e0");
        assert_eq!(GammaConstant::C4.value(Prec::digits(20)).to_sci(16), "5.244115108584240e0");
        assert_eq!(gamma(&q(5, 1), p).unwrap().to_sci(20), "2.4000000000000000000e1");
    }
}
