//! Explicit constants and numerical checks for the positivity of
//! F(t) = −Re (η′/η)(1/2 + it) and the gap integrals ∫F = π.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexfn::{constants, zeta_jet};
use crate::error::{Error, Result};
use crate::eta::{arg_change_on_line, f_value, CRITICAL_T_MIN};
use crate::zerofinder::{RealZetaPrimeZero, ZetaPrimeZero};

/// Height below which the complex-zero head sum is taken from the cache.
pub const HEAD_HEIGHT: f64 = 1000.0;
/// Number of real ζ′ zeros summed explicitly.
pub const REAL_HEAD_TERMS: usize = 30;
/// The constant appearing in the final lower bound for F.
pub const F_BOUND_CONSTANT: f64 = 0.340479;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct ConstantsLedger {
    pub zpp_over_zp_at_0: f64,
    /// ζ″(0)/ζ′(0) from the ζ jet, for comparison with the closed form.
    pub zpp_over_zp_direct: f64,
    pub A: f64,
    pub sum_complex_head: f64,
    pub sum_complex_tail_bound: f64,
    pub sum_complex_total_bound: f64,
    pub sum_real_head_30: f64,
    pub sum_real_tail_bound: f64,
    pub sum_real_total_bound: f64,
    pub totality: f64,
}

/// (−24C₁ − 12C² + π²)/(12 log 2π).
fn stieltjes_block() -> f64 {
    let k = constants();
    (-24.0 * k.stieltjes_c1 - 12.0 * k.euler_c * k.euler_c + PI * PI) / (12.0 * k.log_2pi)
}

/// log 2π + (−24C₁ − 12C² + π²)/(12 log 2π).
pub fn zpp_over_zp_at_0_closed_form() -> f64 {
    constants().log_2pi + stieltjes_block()
}

/// Σ over upper-half zeros with γ′ < `height` of 2·Re(1/ρ′), which folds
/// in the conjugates.
pub fn complex_head_sum(zp: &[ZetaPrimeZero], height: f64) -> f64 {
    zp.iter()
        .filter(|z| z.beta > 0.5 && z.gamma > 0.0 && z.gamma < height)
        .map(|z| 2.0 * z.beta / (z.beta * z.beta + z.gamma * z.gamma))
        .sum()
}

/// 2·3·∫_T^∞ log(t/4π)/(2πt²) dt = (3/π)(log(T/4π) + 1)/T.
pub fn complex_tail_bound(height: f64) -> f64 {
    3.0 / PI * ((height / (4.0 * PI)).ln() + 1.0) / height
}

/// Σ_{n>m} 2/(4n²) = (π²/6 − Σ_{n≤m} 1/n²)/2.
pub fn real_tail_bound(m: usize) -> f64 {
    let head: f64 = (1..=m).rev().map(|n| 1.0 / (n * n) as f64).sum();
    0.5 * (PI * PI / 6.0 - head)
}

pub fn constants_ledger(zp: &[ZetaPrimeZero], real: &[RealZetaPrimeZero]) -> Result<ConstantsLedger> {
    let top = zp.iter().map(|z| z.gamma).fold(0.0, f64::max);
    if top < HEAD_HEIGHT {
        return Err(Error::IncompleteCache(format!("ζ′ zeros reach only t = {top:.3}, need {HEAD_HEIGHT}")));
    }
    let mut real_head = 0.0;
    for n in 1..=REAL_HEAD_TERMS {
        let r = real
            .iter()
            .find(|r| r.n == n)
            .ok_or_else(|| Error::IncompleteCache(format!("real ζ′ zero ρ_{n}′ missing")))?;
        real_head += 1.0 / r.value + 1.0 / (2 * n) as f64;
    }
    let z0 = zeta_jet(Complex64::new(0.0, 0.0), 2)?;
    let closed = zpp_over_zp_at_0_closed_form();
    let head = complex_head_sum(zp, HEAD_HEIGHT);
    let tail = complex_tail_bound(HEAD_HEIGHT);
    let real_tail = real_tail_bound(REAL_HEAD_TERMS);
    let k = constants();
    let complex_total = head + tail;
    let real_total = real_head + real_tail;
    Ok(ConstantsLedger {
        zpp_over_zp_at_0: closed,
        zpp_over_zp_direct: (z0.values[2] / z0.values[1]).re,
        A: closed - 2.0,
        sum_complex_head: head,
        sum_complex_tail_bound: tail,
        sum_complex_total_bound: complex_total,
        sum_real_head_30: real_head,
        sum_real_tail_bound: real_tail,
        sum_real_total_bound: real_total,
        totality: stieltjes_block() - 2.0 + ((4.0 * PI).ln() - k.euler_c) / 2.0 + complex_total + real_total,
    })
}

/// −Re 1/(1/2 + it − ρ′) = (β′ − 1/2)/|s − ρ′|².
pub fn zero_term(t: f64, beta: f64, gamma: f64) -> f64 {
    let d = Complex64::new(0.5 - beta, t - gamma);
    (beta - 0.5) / d.norm_sqr()
}

/// Right-hand side of F(t) > −Σ Re 1/(s − ρ′) + 0.340479 + 2/(1+4t²) − 1/t,
/// summing the cached zeros and their conjugates.
#[allow(non_snake_case)]
pub fn F_lower_bound(t: f64, zp: &[ZetaPrimeZero]) -> Result<f64> {
    if !(t > CRITICAL_T_MIN) {
        return Err(Error::Domain(format!("lower bound needs t > 7, got {t}")));
    }
    if zp.is_empty() {
        return Err(Error::IncompleteCache("no ζ′ zeros".into()));
    }
    let sum: f64 = zp
        .iter()
        .map(|z| zero_term(t, z.beta, z.gamma) + zero_term(t, z.beta, -z.gamma))
        .sum();
    Ok(sum + F_BOUND_CONSTANT + 2.0 / (1.0 + 4.0 * t * t) - 1.0 / t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FMinimum {
    pub t: f64,
    pub value: f64,
    pub grid_points: usize,
}

fn golden_min(mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f_value(c)?, f_value(d)?);
    while (b - a) > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f_value(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f_value(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

/// Minimum of F over a grid on [t_lo, t_hi], each local grid minimum
/// refined by golden-section search to 1e−4.
#[allow(non_snake_case)]
pub fn verify_F_positive(t_lo: f64, t_hi: f64, step: f64) -> Result<FMinimum> {
    if !(t_lo > CRITICAL_T_MIN && t_lo < t_hi && step > 0.0) {
        return Err(Error::Domain(format!("bad F grid ({t_lo}, {t_hi}, {step})")));
    }
    let n = ((t_hi - t_lo) / step).floor() as usize + 1;
    let ts: Vec<f64> = (0..n).map(|k| t_lo + step * k as f64).collect();
    let fs = ts.par_iter().map(|&t| f_value(t)).collect::<Result<Vec<f64>>>()?;
    let local: Vec<usize> = (0..n)
        .filter(|&k| (k == 0 || fs[k] <= fs[k - 1]) && (k + 1 == n || fs[k] <= fs[k + 1]))
        .collect();
    let refined = local
        .par_iter()
        .map(|&k| {
            let a = if k == 0 { ts[0] } else { ts[k - 1] };
            let b = if k + 1 == n { ts[n - 1] } else { ts[k + 1] };
            let (t, v) = if b > a { golden_min(a, b, 1e-4)? } else { (ts[k], fs[k]) };
            Ok(if v < fs[k] { (t, v) } else { (ts[k], fs[k]) })
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (t, value) = refined.into_iter().fold((f64::NAN, f64::INFINITY), |m, x| if x.1 < m.1 { x } else { m });
    Ok(FMinimum { t, value, grid_points: n })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapIntegralResult {
    pub n: usize,
    pub gamma_n: f64,
    pub gamma_np1: f64,
    pub integral: f64,
    pub abs_error_est: f64,
    /// −(arg η(1/2+iγ_{n+1}) − arg η(1/2+iγ_n)), unwrapped.
    pub arg_difference: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and |K15 − G7|.
fn gauss_kronrod<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x)? + f(c + x)?;
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    Ok((k * h, ((k - g) * h).abs()))
}

/// Adaptive Gauss–Kronrod with bisection of the worst interval.
pub fn integrate<F: Fn(f64) -> Result<f64>>(f: F, a: f64, b: f64, tol: f64, max_intervals: usize) -> Result<(f64, f64)> {
    let (v, e) = gauss_kronrod(&f, a, b)?;
    let mut parts = vec![(a, b, v, e)];
    loop {
        let total: f64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if err <= tol {
            return Ok((total, err));
        }
        if parts.len() >= max_intervals {
            return Err(Error::QuadratureFailure { lo: a, hi: b });
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, _, _) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gauss_kronrod(&f, lo, mid)?;
        let (v2, e2) = gauss_kronrod(&f, mid, hi)?;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// ∫ F over [γ_n, γ_{n+1}] with γ taken from `gammas` (γ₁ first).
pub fn gap_integral(n: usize, gammas: &[f64]) -> Result<GapIntegralResult> {
    if n == 0 || n >= gammas.len() {
        return Err(Error::Domain(format!("gap integral index {n} outside cached zeros 1..{}", gammas.len())));
    }
    let (a, b) = (gammas[n - 1], gammas[n]);
    let (integral, abs_error_est) = integrate(f_value, a, b, 1e-9, 200)?;
    if abs_error_est > 1e-6 {
        return Err(Error::QuadratureFailure { lo: a, hi: b });
    }
    Ok(GapIntegralResult {
        n,
        gamma_n: a,
        gamma_np1: b,
        integral,
        abs_error_est,
        arg_difference: -arg_change_on_line(a, b)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailTermReport {
    pub t: f64,
    /// Terms with 2n > t that were checked.
    pub upper_terms: usize,
    pub upper_all_positive: bool,
    pub min_upper_term: f64,
    /// Σ_{2n<t} −Re(1/(s−ρ_n′) − 1/(s+2n)).
    pub lower_block: f64,
    pub lower_block_bound: f64,
    pub lower_block_ok: bool,
}

impl TailTermReport {
    pub fn passed(&self) -> bool {
        self.upper_all_positive && self.lower_block_ok
    }
}

/// Checks the two tail estimates at s = 1/2 + it using cached ρ_n′ and
/// −(2n+1) for n beyond the cache.
pub fn tail_term_checks(t: f64, real: &[RealZetaPrimeZero]) -> Result<TailTermReport> {
    if !(t > CRITICAL_T_MIN) {
        return Err(Error::Domain(format!("tail checks need t > 7, got {t}")));
    }
    let s = Complex64::new(0.5, t);
    let rho = |n: usize| real.iter().find(|r| r.n == n).map_or(-(2.0 * n as f64 + 1.0), |r| r.value);
    let term = |n: usize| -((s - rho(n)).inv() - (s + 2.0 * n as f64).inv()).re;
    let first_upper = (t / 2.0).floor() as usize + 1;
    let upper: Vec<f64> = (first_upper..first_upper + 200).map(term).collect();
    let lower: f64 = (1..first_upper).filter(|&n| (2 * n) as f64 != t).map(term).sum();
    Ok(TailTermReport {
        t,
        upper_terms: upper.len(),
        upper_all_positive: upper.iter().all(|&x| x > 0.0),
        min_upper_term: upper.iter().copied().fold(f64::INFINITY, f64::min),
        lower_block: lower,
        lower_block_bound: -1.0 / t,
        lower_block_ok: lower >= -1.0 / t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_bounds() {
        assert!((complex_tail_bound(1000.0) - 0.005_134_4).abs() < 1e-7);
        assert!((real_tail_bound(30) - 0.016_392_0).abs() < 1e-7);
    }

    #[test]
    fn constant_part_positive_above_seven() {
        for k in 0..2000 {
            let t = 7.0 + 1e-9 + k as f64 * 0.5;
            assert!(F_BOUND_CONSTANT + 2.0 / (1.0 + 4.0 * t * t) - 1.0 / t > 0.0);
        }
    }

    #[test]
    fn zero_terms_nonnegative() {
        assert!(zero_term(30.0, 0.6, 31.0) > 0.0);
        assert!(zero_term(30.0, 2.9, -31.0) > 0.0);
    }

    #[test]
    fn quadrature_polynomial_and_smooth() {
        let (v, e) = integrate(|x| Ok(x.powi(5)), 0.0, 2.0, 1e-12, 50).unwrap();
        assert!((v - 64.0 / 6.0).abs() < 1e-12 && e < 1e-12);
        let (v, _) = integrate(|x| Ok(x.sin()), 0.0, PI, 1e-12, 50).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        assert!(integrate(|x| Ok(1.0 / x.abs().sqrt()), -1.0, 1.0, 1e-14, 4).is_err());
    }

    #[test]
    fn golden_section_finds_interior_minimum() {
        let ts: Vec<f64> = (0..60).map(|k| 14.5 + 0.5 * k as f64).collect();
        let fs: Vec<f64> = ts.iter().map(|&t| f_value(t).unwrap()).collect();
        let k = (1..59).find(|&k| fs[k] <= fs[k - 1] && fs[k] <= fs[k + 1]).unwrap();
        let (t, v) = golden_min(ts[k - 1], ts[k + 1], 1e-6).unwrap();
        assert!(t > ts[k - 1] && t < ts[k + 1]);
        assert!(v <= fs[k]);
    }

    #[test]
    fn domain_errors() {
        assert!(F_lower_bound(6.0, &[ZetaPrimeZero::new(1, 2.46, 23.3)]).is_err());
        assert!(matches!(F_lower_bound(10.0, &[]), Err(Error::IncompleteCache(_))));
        assert!(verify_F_positive(5.0, 10.0, 0.1).is_err());
        assert!(gap_integral(0, &[14.13, 21.02]).is_err());
        assert!(constants_ledger(&[ZetaPrimeZero::new(1, 2.46, 23.3)], &[]).is_err());
    }
}
