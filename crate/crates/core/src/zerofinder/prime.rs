use num_complex::Complex64;
use rayon::prelude::*;

use super::winding::{winding_number, Rect, WindingConfig};
use super::ZetaPrimeZero;
use crate::complexfn::zeta_jet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct PrimeSearchConfig {
    /// The search rectangle is cut into horizontal strips of at most this height.
    pub strip_height: f64,
    pub winding: WindingConfig,
    /// Subdivision depth allowed when isolating zeros.
    pub max_depth: u32,
    /// Required |ζ′| at a refined zero.
    pub residual: f64,
}

impl Default for PrimeSearchConfig {
    fn default() -> Self {
        PrimeSearchConfig {
            strip_height: 10.0,
            winding: WindingConfig::default(),
            max_depth: 12,
            residual: 1e-10,
        }
    }
}

fn zeta_prime(s: Complex64) -> Result<Complex64> {
    Ok(zeta_jet(s, 1)?.values[1])
}

const MAX_NEWTON_STEP: f64 = 0.5;

/// Damped Newton iteration on ζ′ with derivative ζ″; steps are clipped to
/// modulus 0.5.
pub fn polish_zeta_prime_zero(start: Complex64) -> Result<Complex64> {
    let mut s = start;
    for _ in 0..100 {
        let j = zeta_jet(s, 2)?;
        let (f, d) = (j.values[1], j.values[2]);
        if d.norm() == 0.0 {
            return Err(Error::DegenerateZero { re: s.re, im: s.im });
        }
        let mut step = f / d;
        if step.norm() > MAX_NEWTON_STEP {
            step *= MAX_NEWTON_STEP / step.norm();
        }
        s -= step;
        if step.norm() <= 4.0 * f64::EPSILON * s.norm() {
            break;
        }
    }
    let j = zeta_jet(s, 2)?;
    if j.values[1].norm() >= 1e-10 {
        return Err(Error::Precision(format!("Newton did not converge from {start}")));
    }
    if j.values[2].norm() <= 1e-8 {
        return Err(Error::DegenerateZero { re: s.re, im: s.im });
    }
    Ok(s)
}

fn isolate(rect: &Rect, count: i64, depth: u32, cfg: &PrimeSearchConfig) -> Result<Vec<Complex64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if count < 0 {
        return Err(Error::WindingMismatch { expected: count, found: 0, rect: rect.to_string() });
    }
    if count == 1 {
        if let Ok(z) = polish_zeta_prime_zero(rect.center()) {
            if rect.contains(z, 1e-9) {
                return Ok(vec![z]);
            }
        }
    }
    if depth >= cfg.max_depth {
        return Err(Error::WindingMismatch { expected: count, found: 0, rect: rect.to_string() });
    }
    let (a, b) = rect.split();
    let wa = winding_number(&zeta_prime, &a, &cfg.winding)?;
    let mut out = isolate(&a, wa, depth + 1, cfg)?;
    out.extend(isolate(&b, count - wa, depth + 1, cfg)?);
    Ok(out)
}

fn search_strip(rect: &Rect, cfg: &PrimeSearchConfig) -> Result<Vec<Complex64>> {
    let w = winding_number(&zeta_prime, rect, &cfg.winding)?;
    let zeros = isolate(rect, w, 0, cfg)?;
    if zeros.len() as i64 != w {
        return Err(Error::WindingMismatch { expected: w, found: zeros.len(), rect: rect.to_string() });
    }
    Ok(zeros)
}

fn strips(rect: &Rect, h: f64, shift: f64) -> Vec<Rect> {
    let outer = Rect {
        sigma_lo: rect.sigma_lo - shift.abs(),
        sigma_hi: rect.sigma_hi + shift.abs(),
        t_lo: rect.t_lo - shift.abs(),
        t_hi: rect.t_hi + shift.abs(),
    };
    let n = (outer.height() / h).ceil().max(1.0) as usize;
    let step = outer.height() / n as f64;
    (0..n)
        .map(|k| {
            let lo = if k == 0 { outer.t_lo } else { outer.t_lo + k as f64 * step + shift };
            let hi = if k + 1 == n { outer.t_hi } else { outer.t_lo + (k + 1) as f64 * step + shift };
            Rect { t_lo: lo, t_hi: hi, ..outer }
        })
        .collect()
}

/// All zeros of ζ′ inside `rect`, refined and sorted by ordinate. The sum of
/// the strip winding numbers equals the number returned.
pub fn zeta_prime_zeros_in(rect: &Rect, cfg: &PrimeSearchConfig) -> Result<Vec<ZetaPrimeZero>> {
    if rect.contains(Complex64::new(1.0, 0.0), 1e-6) {
        return Err(Error::Domain(format!("search rectangle {rect} contains s = 1")));
    }
    if !(rect.width() > 0.0 && rect.height() > 0.0) {
        return Err(Error::Domain(format!("empty rectangle {rect}")));
    }
    let mut last_err = None;
    for shift in [0.0, 1e-3, -7e-4, 2e-3] {
        let parts = strips(rect, cfg.strip_height, shift);
        let found: Result<Vec<Vec<Complex64>>> =
            parts.par_iter().map(|r| search_strip(r, cfg)).collect();
        match found {
            Ok(groups) => {
                let mut zeros: Vec<Complex64> = groups.into_iter().flatten().collect();
                zeros.sort_by(|a, b| a.im.total_cmp(&b.im));
                zeros.dedup_by(|a, b| (*a - *b).norm() < 1e-8);
                return Ok(zeros
                    .into_iter()
                    .enumerate()
                    .map(|(i, z)| ZetaPrimeZero::new(i + 1, z.re, z.im))
                    .collect());
            }
            Err(e @ Error::BoundaryZero(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::BoundaryZero(rect.to_string())))
}
