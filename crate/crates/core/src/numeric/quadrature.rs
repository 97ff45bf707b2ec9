//! The elliptic integrals along the real ray [L, inf), integrated directly,
//! as an independent check on the series.
//!
//! After x = L/s the ray becomes (0, 1]; a further s = t^2 on the two
//! square-root curves removes the s^(-1/2) endpoint singularity, so the
//! double-exponential rule sees smooth integrands:
//!
//! - x^3 - x,  L = z^(-1/2): 2L / sqrt(L^3 - L t^4), and 2F1 = z^(-1/4) I / 2
//! - x^3 - 1,  L = z^(-1/3): 2L / sqrt(L^3 - t^6),   and 2F1 = z^(-1/6) I / 2
//! - X^3 - 1,  L = z^(-1/3): L / (L^3 - s^3)^(2/3),   and 2F1 = z^(-1/3) I

use serde::Serialize;

use super::hp::HpComplex;
use super::series::{hpg2f1, working, HpgParams};
use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::triple::HpgCase;

/// Absolute error target handed to the integrator.
const TARGET: f64 = 1e-14;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Quadrature {
    pub z: f64,
    /// The integral over [L, inf).
    pub integral: f64,
    /// The 2F1 value it implies.
    pub hpg: f64,
    pub error_estimate: f64,
    pub evaluations: u32,
}

fn integrate(f: impl Fn(f64) -> f64) -> quadrature::Output {
    quadrature::double_exponential::integrate(f, 0.0, 1.0, TARGET)
}

/// Integrate the curve's differential from its lower bound to infinity.
pub fn elliptic_quadrature(case: HpgCase, z: f64) -> Result<Quadrature> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("quadrature needs 0 < z < 1, got {z}")));
    }
    let (out, factor) = match case {
        HpgCase::E1 => {
            let l = z.powf(-0.5);
            (integrate(|t| 2.0 * l / (l * l * l - l * t.powi(4)).sqrt()), z.powf(-0.25) / 2.0)
        }
        HpgCase::E2 => {
            let l = z.powf(-1.0 / 3.0);
            (integrate(|t| 2.0 * l / (l * l * l - t.powi(6)).sqrt()), z.powf(-1.0 / 6.0) / 2.0)
        }
        HpgCase::E3 => {
            let l = z.powf(-1.0 / 3.0);
            (integrate(|s| l / (l * l * l - s.powi(3)).powf(2.0 / 3.0)), z.powf(-1.0 / 3.0))
        }
        HpgCase::Hyper => return Err(Error::Domain("no integral form for the hyperelliptic case".into())),
    };
    Ok(Quadrature {
        z,
        integral: out.integral,
        hpg: out.integral * factor,
        error_estimate: out.error_estimate,
        evaluations: out.num_function_evaluations,
    })
}

/// |quadrature - series| / |series| at z.
pub fn quadrature_vs_series(case: HpgCase, z: &BigRat, prec: u32) -> Result<f64> {
    let zf = crate::arith::rat_to_f64(z);
    let quad = elliptic_quadrature(case, zf)?;
    let s = hpg2f1(&HpgParams::of(case), &HpComplex::from_rat(working(prec), z), prec)?;
    let (re, _) = s.to_c64();
    Ok((quad.hpg - re).abs() / re.abs())
}

/// 2 * integral of dx / sqrt(x^3 - x) over [1, inf), which equals
/// Gamma(1/4)^2 / sqrt(2 pi). With L = 1 the t = 1 end is singular;
/// t = sin(theta) turns 2 / sqrt(1 - t^4) into 2 / sqrt(1 + sin^2 theta).
pub fn c4_by_quadrature() -> f64 {
    let h = std::f64::consts::FRAC_PI_2;
    let out = quadrature::double_exponential::integrate(|th: f64| 2.0 / (1.0 + th.sin().powi(2)).sqrt(), 0.0, h, TARGET);
    2.0 * out.integral
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::gamma::GammaConstant;
    use crate::numeric::hp::Prec;

    #[test]
    fn agrees_with_the_series() {
        for case in [HpgCase::E1, HpgCase::E2, HpgCase::E3] {
            for k in [1, 3, 5, 7, 9] {
                let e = quadrature_vs_series(case, &BigRat::new(k.into(), 10.into()), 30).unwrap();
                assert!(e < 1e-10, "{case:?} z=0.{k}: {e}");
            }
        }
        assert!(elliptic_quadrature(HpgCase::E1, 1.5).is_err());
    }

    #[test]
    fn c4_and_monotonicity() {
        let c4 = GammaConstant::C4.value(Prec::digits(20)).to_f64();
        assert!((c4_by_quadrature() - c4).abs() / c4 < 1e-10);
        let a = elliptic_quadrature(HpgCase::E3, 0.2).unwrap().integral;
        let b = elliptic_quadrature(HpgCase::E3, 0.4).unwrap().integral;
        assert!(a < b);
    }
}
