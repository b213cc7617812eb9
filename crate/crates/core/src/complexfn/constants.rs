use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::zeta::bernoulli_2k;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalConstants {
    /// Euler's constant.
    pub euler_c: f64,
    /// First Stieltjes constant γ₁.
    pub stieltjes_c1: f64,
    pub pi: f64,
    pub log_2pi: f64,
}

const SUM_TERMS: usize = 60;
const CORRECTIONS: usize = 10;

/// γ = H_N − log N − 1/2N + Σ B_2k / (2k N^2k).
fn euler_constant() -> f64 {
    let n = SUM_TERMS as f64;
    let harmonic: f64 = (1..=SUM_TERMS).rev().map(|k| 1.0 / k as f64).sum();
    let mut corr = 0.0;
    for k in (1..=CORRECTIONS).rev() {
        corr += bernoulli_2k(k) / (2.0 * k as f64 * n.powi(2 * k as i32));
    }
    harmonic - n.ln() - 0.5 / n + corr
}

/// γ₁ = Σ log n / n − (log N)²/2 − log N / 2N + Σ B_2k (log N − H_{2k−1}) / (2k N^2k).
fn first_stieltjes() -> f64 {
    let n = SUM_TERMS as f64;
    let ln_n = n.ln();
    let sum: f64 = (1..=SUM_TERMS)
        .rev()
        .map(|k| (k as f64).ln() / k as f64)
        .sum();
    let mut corr = 0.0;
    for k in (1..=CORRECTIONS).rev() {
        let h: f64 = (1..2 * k).map(|j| 1.0 / j as f64).sum();
        corr += bernoulli_2k(k) * (ln_n - h) / (2.0 * k as f64 * n.powi(2 * k as i32));
    }
    sum - ln_n * ln_n / 2.0 - ln_n / (2.0 * n) + corr
}

pub fn constants() -> FundamentalConstants {
    FundamentalConstants {
        euler_c: euler_constant(),
        stieltjes_c1: first_stieltjes(),
        pi: PI,
        log_2pi: (2.0 * PI).ln(),
    }
}
