use num_complex::Complex64;

use super::rootfind::brent;
use super::winding::{winding_number, Rect, WindingConfig};
use super::RealZetaPrimeZero;
use crate::complexfn::zeta_jet;
use crate::error::{Error, Result};

fn zeta_prime_real(x: f64) -> Result<f64> {
    Ok(zeta_jet(Complex64::new(x, 0.0), 1)?.values[1].re)
}

/// The unique real zero of ζ′ in (−2n−2, −2n), for 1 ≤ n ≤ 30.
pub fn real_zeta_prime_zero(n: usize) -> Result<RealZetaPrimeZero> {
    if !(1..=30).contains(&n) {
        return Err(Error::Domain(format!("real zeta' zero index {n} outside 1..=30")));
    }
    let (lo, hi) = (-2.0 * n as f64 - 2.0, -2.0 * n as f64);
    let value = brent(zeta_prime_real, lo, hi, 1e-15)?;
    if !(value > lo && value < hi) {
        return Err(Error::Bracket { lo, hi });
    }
    // Residual relative to the local slope: distance to the root below 1e-10.
    let j = zeta_jet(Complex64::new(value, 0.0), 2)?;
    if j.values[1].norm() > 1e-10 * j.values[2].norm().max(1.0) {
        return Err(Error::Precision(format!("real zeta' zero n = {n} did not converge")));
    }
    let f = |s: Complex64| Ok(zeta_jet(s, 1)?.values[1]);
    let cfg = WindingConfig { base_step: 0.05, boundary_floor: 0.0, ..WindingConfig::default() };
    let w = winding_number(&f, &Rect::new(lo + 1e-3, hi - 1e-3, -0.05, 0.05), &cfg)?;
    if w != 1 {
        return Err(Error::WindingMismatch {
            expected: w,
            found: 1,
            rect: format!("real interval ({lo}, {hi})"),
        });
    }
    Ok(RealZetaPrimeZero { n, value })
}

pub fn real_zeta_prime_zeros(n_max: usize) -> Result<Vec<RealZetaPrimeZero>> {
    (1..=n_max).map(real_zeta_prime_zero).collect()
}
