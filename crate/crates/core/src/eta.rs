//! η(s) = π^(−s/2) Γ(s/2) ζ′(s), its derivatives, and F(t) on the critical line.
//!
//! |Γ(s/2)| decays like e^(−π|t|/4), which underflows `f64` long before
//! t = 1000. Every jet therefore carries a real `log_scale` L with
//! true value = e^L · stored value. L is fixed per evaluation point, so the
//! stored triple is the exact jet of the holomorphic function e^(−L)·η and
//! all sign, argument and level-set questions are unaffected.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::complexfn::jet::Jet;
use crate::complexfn::{gamma_jet, zeta_jet, ComplexValue};
use crate::error::{Error, Result};

/// Below this the critical-line results do not apply.
pub const CRITICAL_T_MIN: f64 = 7.0;

const NEAR_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaJet {
    pub eta: ComplexValue,
    pub eta_d1: ComplexValue,
    pub eta_d2: ComplexValue,
    pub s: ComplexValue,
    /// Natural log of the positive factor removed from all three entries.
    pub log_scale: f64,
}

impl EtaJet {
    pub fn conj(&self) -> EtaJet {
        EtaJet {
            eta: self.eta.conj(),
            eta_d1: self.eta_d1.conj(),
            eta_d2: self.eta_d2.conj(),
            s: self.s.conj(),
            log_scale: self.log_scale,
        }
    }

    /// log |η(s)| including the removed scale.
    pub fn log_abs(&self) -> f64 {
        self.log_scale + self.eta.norm().ln()
    }
}

/// Jet of log G for G(s) = π^(−s/2) Γ(s/2).
fn log_g_jet(s: Complex64) -> Result<Jet> {
    let g = gamma_jet(s / 2.0)?;
    let ln_pi = PI.ln();
    Ok(Jet::from_derivatives([
        g.log_gamma - s * (ln_pi / 2.0),
        g.digamma / 2.0 - ln_pi / 2.0,
        g.trigamma / 4.0,
        g.tetragamma / 8.0,
    ]))
}

fn check_poles(s: Complex64) -> Result<()> {
    let is_gamma_pole = s.im == 0.0 && s.re <= 0.0 && (s.re / 2.0).fract() == 0.0;
    if is_gamma_pole || s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole(s));
    }
    Ok(())
}

pub fn eta_jet(s: ComplexValue) -> Result<EtaJet> {
    check_poles(s)?;
    let mut lg = log_g_jet(s)?;
    let log_scale = lg.0[0].re;
    lg.0[0].re = 0.0;
    let zp = zeta_jet(s, 3)?.as_jet().differentiate();
    let d = (lg.exp() * zp).derivatives();
    Ok(EtaJet {
        eta: d[0],
        eta_d1: d[1],
        eta_d2: d[2],
        s,
        log_scale,
    })
}

/// η′/η from the identity η′/η = −½ log π + ½ψ(s/2) + ζ″/ζ′.
pub fn eta_log_deriv(s: ComplexValue) -> Result<ComplexValue> {
    check_poles(s)?;
    let z = zeta_jet(s, 2)?;
    if z.values[1].norm() < NEAR_ZERO {
        return Err(Error::NearZero { re: s.re, im: s.im });
    }
    let psi = gamma_jet(s / 2.0)?.digamma;
    Ok(psi / 2.0 - PI.ln() / 2.0 + z.values[2] / z.values[1])
}

/// F(t) = −Re (η′/η)(1/2 + it), defined for |t| > 7.
pub fn f_value(t: f64) -> Result<f64> {
    if !(t.abs() > CRITICAL_T_MIN) {
        return Err(Error::Domain(format!("F(t) needs |t| > 7, got {t}")));
    }
    Ok(-eta_log_deriv(Complex64::new(0.5, t))?.re)
}

/// Re of the scaled η on the critical line; same sign and zeros as Re η.
pub fn re_eta_on_line(t: f64) -> Result<f64> {
    Ok(eta_jet(Complex64::new(0.5, t))?.eta.re)
}

/// Principal argument of η(1/2 + it).
pub fn arg_eta_on_line(t: f64) -> Result<f64> {
    Ok(eta_jet(Complex64::new(0.5, t))?.eta.arg())
}

fn wrap(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    } else if y <= -PI {
        y += 2.0 * PI;
    }
    y
}

/// Continuous change of arg η(1/2 + it) from `t0` to `t1`, tracking the
/// branch by halving the step whenever consecutive arguments differ by
/// π/2 or more.
pub fn arg_change_on_line(t0: f64, t1: f64) -> Result<f64> {
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut a = arg_eta_on_line(t)?;
    let mut total = 0.0;
    let mut h: f64 = 0.05;
    while (t1 - t) * dir > 0.0 {
        let step = h.min((t1 - t).abs());
        let tn = t + dir * step;
        let an = arg_eta_on_line(tn)?;
        let d = wrap(an - a);
        if d.abs() >= PI / 2.0 {
            h /= 2.0;
            if h < 1e-9 {
                return Err(Error::Precision(format!("argument unwrapping stalled at t = {t}")));
            }
            continue;
        }
        total += d;
        t = tn;
        a = an;
        h = (h * 1.5).min(0.05);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA1: f64 = 14.134_725_141_734_693;

    #[test]
    fn conjugate_symmetry() {
        let s = Complex64::new(0.8, 123.4);
        let a = eta_jet(s).unwrap();
        let b = eta_jet(s.conj()).unwrap();
        let c = a.conj();
        for (x, y) in [(b.eta, c.eta), (b.eta_d1, c.eta_d1), (b.eta_d2, c.eta_d2)] {
            assert!((x - y).norm() <= 1e-12 * x.norm().max(1.0));
        }
        assert_eq!(a.log_scale, b.log_scale);
        let l = eta_log_deriv(s).unwrap();
        assert!((eta_log_deriv(s.conj()).unwrap() - l.conj()).norm() < 1e-12);
    }

    #[test]
    fn first_zero_is_odd() {
        let j = eta_jet(Complex64::new(0.5, GAMMA1)).unwrap();
        assert!(j.eta.re.abs() < 1e-9 * j.eta.norm());
        assert!(j.eta.im < 0.0);
    }

    #[test]
    fn product_of_factors() {
        // Direct product at a height where nothing underflows.
        let s = Complex64::new(0.3, 20.0);
        let j = eta_jet(s).unwrap();
        let g = (-(s / 2.0) * PI.ln() + gamma_jet(s / 2.0).unwrap().log_gamma).exp();
        let direct = g * zeta_jet(s, 1).unwrap().values[1];
        let ours = j.eta * j.log_scale.exp();
        assert!((ours - direct).norm() <= 1e-10 * direct.norm());
    }

    #[test]
    fn log_deriv_matches_jet_ratio() {
        for s in [Complex64::new(0.5, 50.0), Complex64::new(-3.0, 9.0), Complex64::new(4.0, 300.0)] {
            let j = eta_jet(s).unwrap();
            let l = eta_log_deriv(s).unwrap();
            assert!((l - j.eta_d1 / j.eta).norm() < 1e-8 * l.norm().max(1.0));
        }
    }

    #[test]
    fn poles_rejected() {
        for s in [1.0, 0.0, -2.0, -10.0] {
            assert!(matches!(eta_jet(Complex64::new(s, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(eta_jet(Complex64::new(-3.0, 0.0)).is_ok());
    }

    #[test]
    fn f_requires_height_and_is_even() {
        assert!(matches!(f_value(6.9), Err(Error::Domain(_))));
        let a = f_value(33.3).unwrap();
        let b = f_value(-33.3).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn f_is_minus_arg_derivative() {
        let t = 40.0;
        let h = 1e-3;
        let d = arg_change_on_line(t - h, t + h).unwrap() / (2.0 * h);
        assert!((f_value(t).unwrap() + d).abs() < 1e-5);
    }
}
