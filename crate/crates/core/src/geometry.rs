//! Curvature and normal of Re η = 0 at ζ′ zeros, and the histogram
//! statistics built from them.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::eta_jet;
use crate::zerofinder::{ZeroType, ZetaPrimeZero};

/// Orientation of κ relative to the formula with N = +∇u. With −1 the
/// first two ζ′ zeros come out with θ > π/2 and type-2 zeros cluster
/// around θ = 0, as observed.
pub const KAPPA_SIGN: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryProxy {
    pub zero_id: usize,
    pub kappa: f64,
    /// (u_σ, u_t) of the scaled jet.
    pub normal: [f64; 2],
    pub theta: f64,
    pub scaled_displacement: f64,
}

/// Curvature of u = 0 from the partial derivatives of u.
pub fn implicit_curvature(us: f64, ut: f64, uss: f64, ust: f64, utt: f64) -> f64 {
    let g2 = us * us + ut * ut;
    (2.0 * us * ut * ust - us * us * utt - ut * ut * uss) / (g2 * g2.sqrt())
}

/// κ, N = ∇Re η and θ = arg(sign κ · N) at a ζ′ zero.
pub fn curvature_normal(z: &ZetaPrimeZero) -> Result<GeometryProxy> {
    let j = eta_jet(z.point())?;
    let (d1, d2) = (j.eta_d1, j.eta_d2);
    if d1.norm() <= 1e-10 {
        return Err(Error::DegenerateZero { re: z.beta, im: z.gamma });
    }
    let (us, ut) = (d1.re, -d1.im);
    let (uss, ust, utt) = (d2.re, -d2.im, -d2.re);
    let kappa = KAPPA_SIGN * implicit_curvature(us, ut, uss, ust, utt);
    Ok(GeometryProxy {
        zero_id: z.id,
        kappa,
        normal: [us, ut],
        theta: proxy_angle(kappa, [us, ut]),
        scaled_displacement: (z.beta - 0.5) * z.gamma.ln(),
    })
}

/// arg(sign κ · N) in (−π, π].
pub fn proxy_angle(kappa: f64, normal: [f64; 2]) -> f64 {
    let n = Complex64::new(normal[0], normal[1]) * kappa.signum();
    let a = n.arg();
    if a == -PI {
        PI
    } else {
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProxyKind {
    Theta,
    ScaledDisplacement,
}

pub const THETA_BINS: usize = 36;
pub const DISPLACEMENT_BINS: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub which: ProxyKind,
    pub edges: Vec<f64>,
    /// Keyed by type count 0, 1, 2.
    pub counts_by_type: BTreeMap<u8, Vec<u64>>,
    pub medians: BTreeMap<u8, Option<f64>>,
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

/// Per-type histograms over shared edges. θ uses (−π, π]; displacement
/// uses the data range. Unresolved zeros are skipped.
pub fn proxy_histogram(proxies: &[(GeometryProxy, ZeroType)], which: ProxyKind, bins: usize) -> Histogram {
    let bins = bins.max(1);
    let value = |p: &GeometryProxy| match which {
        ProxyKind::Theta => p.theta,
        ProxyKind::ScaledDisplacement => p.scaled_displacement,
    };
    let (lo, hi) = match which {
        ProxyKind::Theta => (-PI, PI),
        ProxyKind::ScaledDisplacement => {
            let vals = proxies.iter().map(|(p, _)| value(p));
            let lo = vals.clone().fold(f64::INFINITY, f64::min);
            let hi = vals.fold(f64::NEG_INFINITY, f64::max);
            if lo.is_finite() && hi > lo {
                (lo, hi)
            } else if lo.is_finite() {
                (lo - 0.5, lo + 0.5)
            } else {
                (0.0, 1.0)
            }
        }
    };
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
    let mut counts_by_type = BTreeMap::new();
    let mut medians = BTreeMap::new();
    for ty in [ZeroType::Zero, ZeroType::One, ZeroType::Two] {
        let key = ty.count().unwrap_or(0) as u8;
        let vals: Vec<f64> = proxies.iter().filter(|(_, t)| *t == ty).map(|(p, _)| value(p)).collect();
        let mut counts = vec![0u64; bins];
        for &v in &vals {
            // θ bins are open on the left, displacement bins on the right.
            let pos = (v - lo) / width;
            let i = match which {
                ProxyKind::Theta => pos.ceil() - 1.0,
                ProxyKind::ScaledDisplacement => pos.floor(),
            };
            counts[(i as isize).clamp(0, bins as isize - 1) as usize] += 1;
        }
        counts_by_type.insert(key, counts);
        medians.insert(key, median(vals));
    }
    Histogram { which, edges, counts_by_type, medians }
}
