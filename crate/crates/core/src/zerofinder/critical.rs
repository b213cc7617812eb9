use rayon::prelude::*;

use super::rootfind::brent;
use super::{Parity, ZeroType, ZetaZero};
use crate::error::{Error, Result};
use crate::eta::{eta_jet, re_eta_on_line, CRITICAL_T_MIN};

#[derive(Debug, Clone, Copy)]
pub struct LineScanConfig {
    /// Grid spacing for the sign-change scan.
    pub delta: f64,
    /// Ordinate tolerance for the refined zeros.
    pub tol: f64,
    /// Sub-samples per grid cell used to detect a coarse grid.
    pub cell_checks: usize,
}

impl Default for LineScanConfig {
    fn default() -> Self {
        LineScanConfig { delta: 0.05, tol: 1e-11, cell_checks: 4 }
    }
}

fn refine(lo: f64, hi: f64, cfg: &LineScanConfig) -> Result<f64> {
    let fl = re_eta_on_line(lo)?;
    let mut changes = 0;
    let mut prev = fl;
    for k in 1..=cfg.cell_checks {
        let v = re_eta_on_line(lo + (hi - lo) * k as f64 / cfg.cell_checks as f64)?;
        if (v >= 0.0) != (prev >= 0.0) {
            changes += 1;
        }
        prev = v;
    }
    if changes > 1 {
        return Err(Error::GridTooCoarse { t: lo });
    }
    brent(re_eta_on_line, lo, hi, cfg.tol)
}

/// Riemann zeros 1/2 + iγ with `t_lo ≤ γ < t_hi`, found as sign changes of
/// t ↦ Re η(1/2 + it). The scan always starts at t = 7 so indices are
/// global; parity comes from the sign of Im η at the zero.
pub fn zeta_zeros_in(t_lo: f64, t_hi: f64, cfg: &LineScanConfig) -> Result<Vec<ZetaZero>> {
    if !(t_lo >= CRITICAL_T_MIN && t_hi > t_lo) {
        return Err(Error::Domain(format!(
            "critical-line scan needs 7 <= t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }
    let n = ((t_hi - CRITICAL_T_MIN) / cfg.delta).ceil() as usize;
    let grid: Vec<f64> = (0..=n)
        .map(|k| (CRITICAL_T_MIN + k as f64 * cfg.delta).min(t_hi))
        .collect();
    let values = grid
        .par_iter()
        .map(|&t| re_eta_on_line(t))
        .collect::<Result<Vec<f64>>>()?;
    let brackets: Vec<(f64, f64)> = (1..grid.len())
        .filter(|&k| (values[k - 1] >= 0.0) != (values[k] >= 0.0))
        .map(|k| (grid[k - 1], grid[k]))
        .collect();
    let gammas = brackets
        .par_iter()
        .map(|&(a, b)| refine(a, b, cfg))
        .collect::<Result<Vec<f64>>>()?;

    let mut out = Vec::new();
    for (i, &gamma) in gammas.iter().enumerate() {
        if gamma < t_lo || gamma >= t_hi {
            continue;
        }
        let im = eta_jet(num_complex::Complex64::new(0.5, gamma))?.eta.im;
        out.push(ZetaZero {
            index: i + 1,
            gamma,
            parity: if im < 0.0 { Parity::Odd } else { Parity::Even },
            zero_type: ZeroType::Unresolved,
            terminal_zero_id: None,
            pair_partner_index: None,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_ten() {
        let z = zeta_zeros_in(7.0, 50.0, &LineScanConfig::default()).unwrap();
        assert_eq!(z.len(), 10);
        assert!((z[0].gamma - 14.134_725_141_734_693).abs() < 1e-9);
        assert!((z[9].gamma - 49.773_832_477_672_3).abs() < 1e-9);
        for w in &z {
            assert_eq!(w.parity, Parity::of_index(w.index));
        }
    }

    #[test]
    fn indices_are_global() {
        let z = zeta_zeros_in(40.0, 50.0, &LineScanConfig::default()).unwrap();
        assert_eq!(z.first().unwrap().index, 7);
    }

    #[test]
    fn coarse_grid_reported() {
        // [7, 27] holds three zeros: one net sign change, three on the sub-samples.
        let cfg = LineScanConfig { delta: 20.0, tol: 1e-9, cell_checks: 8 };
        assert!(matches!(zeta_zeros_in(7.0, 27.0, &cfg), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn below_threshold_rejected() {
        assert!(zeta_zeros_in(5.0, 50.0, &LineScanConfig::default()).is_err());
    }
}
