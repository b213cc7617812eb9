//! Complex log Γ and the polygamma functions ψ, ψ′, ψ″.
//!
//! All four use the Stirling asymptotic series after shifting the argument
//! away from the origin with the recurrence Γ(z+1) = zΓ(z). The shift sums
//! principal logarithms, so `log_gamma` is the branch that is analytic on
//! ℂ \ (−∞, 0] and real on the positive axis.

use num_complex::Complex64;

use super::jet::Jet;
use crate::error::{Error, Result};

/// B_{2k} for k = 1..=10.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this modulus the argument is shifted before applying Stirling.
const SHIFT_TARGET: f64 = 15.0;

fn check_pole(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::pole(z));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    Ok(())
}

fn shift_count(z: Complex64) -> u32 {
    if z.im.abs() < SHIFT_TARGET + 5.0 && z.re < SHIFT_TARGET {
        (SHIFT_TARGET - z.re).ceil() as u32
    } else if z.re < 0.0 {
        (-z.re).ceil() as u32
    } else {
        0
    }
}

/// Values of log Γ, ψ, ψ′, ψ″ at one point, sharing the shift work.
#[derive(Debug, Clone, Copy)]
pub struct GammaJet {
    pub log_gamma: Complex64,
    pub digamma: Complex64,
    pub trigamma: Complex64,
    pub tetragamma: Complex64,
}

impl GammaJet {
    /// Taylor jet of `s ↦ log Γ(s)` at the evaluation point.
    pub fn as_jet(&self) -> Jet {
        Jet::from_derivatives([self.log_gamma, self.digamma, self.trigamma, self.tetragamma])
    }
}

pub fn gamma_jet(z: Complex64) -> Result<GammaJet> {
    check_pole(z)?;
    let m = shift_count(z);
    let mut lg_shift = Complex64::new(0.0, 0.0);
    let mut p0_shift = Complex64::new(0.0, 0.0);
    let mut p1_shift = Complex64::new(0.0, 0.0);
    let mut p2_shift = Complex64::new(0.0, 0.0);
    for k in 0..m {
        let w = z + k as f64;
        let r = w.inv();
        lg_shift += w.ln();
        p0_shift += r;
        p1_shift += r * r;
        p2_shift += r * r * r;
    }
    let w = z + m as f64;
    let r = w.inv();
    let r2 = r * r;
    let lnw = w.ln();

    let mut lg = (w - 0.5) * lnw - w + HALF_LN_2PI;
    let mut p0 = lnw - r * 0.5;
    let mut p1 = r + r2 * 0.5;
    let mut p2 = -r2 - r2 * r;
    // rp = r^(2k-1)
    let mut rp = r;
    for (i, &b) in BERNOULLI.iter().enumerate() {
        let k = (i + 1) as f64;
        lg += rp * (b / (2.0 * k * (2.0 * k - 1.0)));
        let rp1 = rp * r;
        p0 -= rp1 * (b / (2.0 * k));
        let rp2 = rp1 * r;
        p1 += rp2 * b;
        p2 -= rp2 * r * ((2.0 * k + 1.0) * b);
        rp *= r2;
    }
    Ok(GammaJet {
        log_gamma: lg - lg_shift,
        digamma: p0 - p0_shift,
        trigamma: p1 + p1_shift,
        tetragamma: p2 - 2.0 * p2_shift,
    })
}

/// Principal-branch log Γ(s).
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    Ok(gamma_jet(s)?.log_gamma)
}

/// ψ(s) = d/ds log Γ(s).
pub fn digamma(s: Complex64) -> Result<Complex64> {
    Ok(gamma_jet(s)?.digamma)
}

/// ψ′(s).
pub fn trigamma(s: Complex64) -> Result<Complex64> {
    Ok(gamma_jet(s)?.trigamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const EULER: f64 = 0.577_215_664_901_532_9;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn classical_values() {
        assert!(log_gamma(re(1.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(re(0.5)).unwrap();
        assert!((half - re(0.5 * PI.ln())).norm() < 1e-14, "{}", (half - re(0.5 * PI.ln())).norm());
        assert!((digamma(re(1.0)).unwrap() + EULER).norm() < 1e-15);
        let d_half = digamma(re(0.5)).unwrap();
        assert!((d_half - re(-EULER - 2.0 * 2f64.ln())).norm() < 1e-14);
        assert!((trigamma(re(1.0)).unwrap() - re(PI * PI / 6.0)).norm() < 1e-14);
    }

    #[test]
    fn poles_are_errors() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert!(matches!(log_gamma(re(x)), Err(Error::Pole { .. })));
            assert!(matches!(digamma(re(x)), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(Complex64::new(-2.0, 1e-9)).is_ok());
    }

    #[test]
    fn recurrence_across_shift_boundary() {
        // Γ(z+1) = zΓ(z) where z+1 is not shifted but z is.
        let z = Complex64::new(14.5, 3.0);
        let a = log_gamma(z + 1.0).unwrap();
        let b = log_gamma(z).unwrap() + z.ln();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let z = Complex64::new(-2.3, 4.1);
        let h = 1e-4;
        let g = gamma_jet(z).unwrap();
        let f = |w: Complex64| gamma_jet(w).unwrap();
        let d0 = (f(z + h).log_gamma - f(z - h).log_gamma) / (2.0 * h);
        let d1 = (f(z + h).digamma - f(z - h).digamma) / (2.0 * h);
        let d2 = (f(z + h).trigamma - f(z - h).trigamma) / (2.0 * h);
        assert!((d0 - g.digamma).norm() < 1e-8);
        assert!((d1 - g.trigamma).norm() < 1e-8);
        assert!((d2 - g.tetragamma).norm() < 1e-8);
    }
}
