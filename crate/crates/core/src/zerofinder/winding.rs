//! Argument-principle zero counting on axis-parallel rectangles.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rect {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Self {
        Rect { sigma_lo, sigma_hi, t_lo, t_hi }
    }

    pub fn contains(&self, s: Complex64, slack: f64) -> bool {
        s.re >= self.sigma_lo - slack
            && s.re <= self.sigma_hi + slack
            && s.im >= self.t_lo - slack
            && s.im <= self.t_hi + slack
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.sigma_lo + self.sigma_hi),
            0.5 * (self.t_lo + self.t_hi),
        )
    }

    pub fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    pub fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    /// Halves along the longer side.
    pub fn split(&self) -> (Rect, Rect) {
        if self.width() >= self.height() {
            let m = 0.5 * (self.sigma_lo + self.sigma_hi);
            (
                Rect { sigma_hi: m, ..*self },
                Rect { sigma_lo: m, ..*self },
            )
        } else {
            let m = 0.5 * (self.t_lo + self.t_hi);
            (Rect { t_hi: m, ..*self }, Rect { t_lo: m, ..*self })
        }
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.sigma_lo, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_hi),
            Complex64::new(self.sigma_lo, self.t_hi),
        ]
    }
}

impl std::fmt::Display for Rect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}] x [{}, {}]",
            self.sigma_lo, self.sigma_hi, self.t_lo, self.t_hi
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct WindingConfig {
    /// Initial spacing of boundary samples.
    pub base_step: f64,
    /// Largest accepted phase increment between neighbouring samples.
    pub max_phase_step: f64,
    pub max_depth: u32,
    /// Boundary values below this count as a zero on the boundary.
    pub boundary_floor: f64,
}

impl Default for WindingConfig {
    fn default() -> Self {
        WindingConfig {
            base_step: 0.1,
            max_phase_step: 0.5,
            max_depth: 40,
            boundary_floor: 1e-10,
        }
    }
}

fn phase(a: Complex64, b: Complex64) -> f64 {
    (b / a).arg()
}

struct Walker<'a, F> {
    f: &'a F,
    cfg: &'a WindingConfig,
}

impl<F> Walker<'_, F>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    fn eval(&self, s: Complex64) -> Result<Complex64> {
        let v = (self.f)(s)?;
        if v.norm() < self.cfg.boundary_floor {
            return Err(Error::BoundaryZero(format!("|f| = {:e} at {s}", v.norm())));
        }
        Ok(v)
    }

    fn segment(&self, a: Complex64, b: Complex64, fa: Complex64, fb: Complex64, depth: u32) -> Result<f64> {
        let m = (a + b) * 0.5;
        let fm = self.eval(m)?;
        let (d1, d2) = (phase(fa, fm), phase(fm, fb));
        let lim = self.cfg.max_phase_step;
        if (d1.abs() < lim && d2.abs() < lim) || depth >= self.cfg.max_depth {
            if depth >= self.cfg.max_depth && (d1.abs() >= PI / 2.0 || d2.abs() >= PI / 2.0) {
                return Err(Error::BoundaryZero(format!("phase unresolved near {m}")));
            }
            return Ok(d1 + d2);
        }
        Ok(self.segment(a, m, fa, fm, depth + 1)? + self.segment(m, b, fm, fb, depth + 1)?)
    }

    fn total_phase(&self, rect: &Rect, base: f64) -> Result<f64> {
        let c = rect.corners();
        let mut total = 0.0;
        for i in 0..4 {
            let (p, q) = (c[i], c[(i + 1) % 4]);
            let n = (((q - p).norm() / base).ceil() as usize).max(1);
            let mut prev = p;
            let mut fprev = self.eval(p)?;
            for k in 1..=n {
                let next = p + (q - p) * (k as f64 / n as f64);
                let fnext = self.eval(next)?;
                total += self.segment(prev, next, fprev, fnext, 0)?;
                prev = next;
                fprev = fnext;
            }
        }
        Ok(total)
    }
}

/// Number of zeros of `f` inside `rect` (counterclockwise boundary). Two
/// estimates at different base spacings must agree to within 0.25 turns.
pub fn winding_number<F>(f: &F, rect: &Rect, cfg: &WindingConfig) -> Result<i64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let w = Walker { f, cfg };
    let coarse = w.total_phase(rect, cfg.base_step)? / (2.0 * PI);
    let fine = w.total_phase(rect, cfg.base_step / 2.0)? / (2.0 * PI);
    if (coarse - fine).abs() >= 0.25 || (fine - fine.round()).abs() >= 0.25 {
        return Err(Error::Precision(format!(
            "winding estimates {coarse} and {fine} disagree on {rect}"
        )));
    }
    Ok(fine.round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_polynomial_roots() {
        // (s-1)(s-2i)(s+0.5+0.5i)
        let f = |s: Complex64| {
            Ok((s - 1.0) * (s - Complex64::new(0.0, 2.0)) * (s + Complex64::new(0.5, 0.5)))
        };
        let cfg = WindingConfig::default();
        assert_eq!(winding_number(&f, &Rect::new(-3.0, 3.0, -3.0, 3.0), &cfg).unwrap(), 3);
        assert_eq!(winding_number(&f, &Rect::new(0.5, 1.5, -0.5, 0.5), &cfg).unwrap(), 1);
        assert_eq!(winding_number(&f, &Rect::new(1.5, 3.0, -3.0, 3.0), &cfg).unwrap(), 0);
    }

    #[test]
    fn boundary_zero_detected() {
        let f = |s: Complex64| Ok(s - 1.0);
        let r = winding_number(&f, &Rect::new(1.0, 2.0, -1.0, 1.0), &WindingConfig::default());
        assert!(matches!(r, Err(Error::BoundaryZero(_))));
    }
}
