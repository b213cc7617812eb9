//! ζ(s) and its first three derivatives.
//!
//! For σ ≥ −1 the Euler–Maclaurin formula is differentiated term by term
//! through [`Jet`] arithmetic. Further left the functional equation
//! ζ(s) = χ(s) ζ(1−s) is used, with the exponentially large sine factor and
//! the exponentially small Γ(1−s) rescaled against each other so nothing
//! overflows at large |t|.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::gamma::gamma_jet;
use super::jet::{Jet, ORDER};
use crate::error::{Error, Result};

/// Truncation parameters for the Euler–Maclaurin evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaConfig {
    /// Summation terms per unit of |Im s|.
    pub terms_per_unit_t: f64,
    pub min_terms: usize,
    /// Number of Bernoulli correction terms (at most 14).
    pub bernoulli_terms: usize,
    /// Largest supported |Im s|.
    pub max_im: f64,
    /// Allowed estimated error, relative to `max(1, |ζ^(k)|)`.
    pub error_budget: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig {
            terms_per_unit_t: 1.3,
            min_terms: 20,
            bernoulli_terms: 14,
            max_im: 2100.0,
            error_budget: 1e-10,
        }
    }
}

impl ZetaConfig {
    fn summation_terms(&self, t: f64) -> usize {
        self.min_terms.max((self.terms_per_unit_t * t.abs()).ceil() as usize)
    }
}

/// `[ζ(s), ζ′(s), ζ″(s), ζ‴(s)]` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaJet {
    pub values: [Complex64; ORDER],
    pub s: Complex64,
    pub est_abs_error: f64,
}

impl ZetaJet {
    pub fn conj(&self) -> ZetaJet {
        ZetaJet {
            values: self.values.map(|v| v.conj()),
            s: self.s.conj(),
            est_abs_error: self.est_abs_error,
        }
    }

    pub fn as_jet(&self) -> Jet {
        Jet::from_derivatives(self.values)
    }
}

/// B_{2k}/(2k)! for k = 1..=15.
fn bernoulli_over_factorial() -> &'static [f64; 15] {
    static TABLE: OnceLock<[f64; 15]> = OnceLock::new();
    TABLE.get_or_init(|| {
        const B: [(f64, f64); 15] = [
            (1.0, 6.0),
            (-1.0, 30.0),
            (1.0, 42.0),
            (-1.0, 30.0),
            (5.0, 66.0),
            (-691.0, 2730.0),
            (7.0, 6.0),
            (-3617.0, 510.0),
            (43867.0, 798.0),
            (-174611.0, 330.0),
            (854513.0, 138.0),
            (-236364091.0, 2730.0),
            (8553103.0, 6.0),
            (-23749461029.0, 870.0),
            (8615841276005.0, 14322.0),
        ];
        let mut out = [0.0; 15];
        let mut fact = 1.0;
        for (k, (num, den)) in B.iter().enumerate() {
            let n = 2 * (k + 1);
            fact *= (n - 1) as f64 * n as f64;
            out[k] = num / den / fact;
        }
        out
    })
}

/// B_{2k} for k = 1..=14, used by the constant evaluations.
pub(crate) fn bernoulli_2k(k: usize) -> f64 {
    let mut fact = 1.0;
    for i in 1..=2 * k {
        fact *= i as f64;
    }
    bernoulli_over_factorial()[k - 1] * fact
}

/// ζ jet of order 3 via Euler–Maclaurin, with a truncation estimate.
fn euler_maclaurin(s: Complex64, cfg: &ZetaConfig) -> (Jet, f64) {
    let n = cfg.summation_terms(s.im);
    let (sigma, t) = (s.re, s.im);

    let mut acc = [Complex64::new(0.0, 0.0); ORDER];
    for k in 1..n {
        let l = (k as f64).ln();
        let mag = (-sigma * l).exp();
        let (sn, cs) = (t * l).sin_cos();
        let mut term = Complex64::new(mag * cs, -mag * sn);
        acc[0] += term;
        term *= -l;
        acc[1] += term;
        term *= -l;
        acc[2] += term;
        term *= -l;
        acc[3] += term;
    }
    let dirichlet = Jet::from_derivatives(acc);

    let nf = n as f64;
    let big_l = nf.ln();
    let ns = (-s * big_l).exp();
    let npow = Jet([
        ns,
        -ns * big_l,
        ns * (big_l * big_l / 2.0),
        -ns * (big_l * big_l * big_l / 6.0),
    ]);

    let sv = Jet::variable(s);
    let one = Complex64::new(1.0, 0.0);
    let mut tail = (sv - Jet::constant(one)).recip().scale(Complex64::new(nf, 0.0))
        + Jet::constant(Complex64::new(0.5, 0.0));
    let inv_n2 = Complex64::new(1.0 / (nf * nf), 0.0);
    let mut poly = sv.scale(Complex64::new(1.0 / nf, 0.0));
    let bern = bernoulli_over_factorial();
    let m = cfg.bernoulli_terms.min(14);
    for (k, b) in bern.iter().enumerate().take(m) {
        tail = tail + poly.scale(Complex64::new(*b, 0.0));
        let a = (2 * k + 1) as f64;
        poly = poly
            * (sv + Jet::constant(Complex64::new(a, 0.0)))
            * (sv + Jet::constant(Complex64::new(a + 1.0, 0.0)));
        poly = poly.scale(inv_n2);
    }
    let next = poly.scale(Complex64::new(bern[m], 0.0)) * npow;
    let err = next.0.iter().map(|c| c.norm()).fold(0.0, f64::max) * 6.0;
    (dirichlet + npow * tail, err)
}

/// `sin(z)·exp(−|Im z|)`, finite for any z.
fn scaled_sin(z: Complex64) -> Complex64 {
    let c = z.im.abs();
    let i = Complex64::new(0.0, 1.0);
    ((i * z - c).exp() - (-i * z - c).exp()) / (2.0 * i)
}

/// Jet of χ(s) = 2^s π^(s−1) sin(πs/2) Γ(1−s) at s.
fn chi_jet(s: Complex64) -> Result<Jet> {
    let sv = Jet::variable(s);
    let two_pi = 2.0 * PI;
    let a = (sv.scale(Complex64::new(two_pi.ln(), 0.0))
        - Jet::constant(Complex64::new(PI.ln(), 0.0)))
    .exp();

    let z = s * (PI / 2.0);
    let mut bd = [Complex64::new(0.0, 0.0); ORDER];
    let mut f = 1.0;
    for (j, v) in bd.iter_mut().enumerate() {
        *v = scaled_sin(z + j as f64 * PI / 2.0) * f;
        f *= PI / 2.0;
    }
    let b = Jet::from_derivatives(bd);

    let g = gamma_jet(Complex64::new(1.0, 0.0) - s)?;
    let c = z.im.abs();
    let lc = Jet::from_derivatives([g.log_gamma + c, -g.digamma, g.trigamma, -g.tetragamma]).exp();
    Ok(a * b * lc)
}

fn check_domain(s: Complex64, cfg: &ZetaConfig) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {s}")));
    }
    if s.im.abs() > cfg.max_im {
        return Err(Error::Domain(format!(
            "|Im s| = {} exceeds the supported maximum {}",
            s.im.abs(),
            cfg.max_im
        )));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole(s));
    }
    Ok(())
}

/// ζ and its first three derivatives at `s`. `k_max` names the highest
/// derivative the caller needs; all four entries are always populated.
pub fn zeta_jet(s: Complex64, k_max: usize) -> Result<ZetaJet> {
    zeta_jet_with(s, k_max, &ZetaConfig::default())
}

pub fn zeta_jet_with(s: Complex64, k_max: usize, cfg: &ZetaConfig) -> Result<ZetaJet> {
    if k_max > 3 {
        return Err(Error::Domain(format!("derivative order {k_max} > 3")));
    }
    check_domain(s, cfg)?;
    let (jet, err) = if s.re >= -1.0 {
        euler_maclaurin(s, cfg)
    } else {
        let w = Complex64::new(1.0, 0.0) - s;
        let (zw, err) = euler_maclaurin(w, cfg);
        // d/ds ζ(1−s): odd Taylor coefficients flip sign.
        let c = zw.0;
        let reflected = Jet([c[0], -c[1], c[2], -c[3]]);
        let chi = chi_jet(s)?;
        let scale = chi.0.iter().map(|c| c.norm()).fold(0.0, f64::max);
        (chi * reflected, err * scale * 8.0)
    };
    let values = jet.derivatives();
    let size = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    if !(err <= cfg.error_budget * size) {
        return Err(Error::Precision(format!(
            "zeta truncation estimate {err:e} at s = {s} exceeds budget"
        )));
    }
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Precision(format!("non-finite zeta jet at s = {s}")));
    }
    Ok(ZetaJet {
        values,
        s,
        est_abs_error: err,
    })
}

/// ζ(s) through the functional equation regardless of σ. Used to cross-check
/// the direct evaluation.
pub fn zeta_via_functional_equation(s: Complex64) -> Result<Complex64> {
    let cfg = ZetaConfig::default();
    check_domain(s, &cfg)?;
    let w = Complex64::new(1.0, 0.0) - s;
    check_domain(w, &cfg)?;
    let (zw, _) = euler_maclaurin(w, &cfg);
    Ok(chi_jet(s)?.value() * zw.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn classical_values() {
        let z2 = zeta_jet(re(2.0), 0).unwrap().values[0];
        assert!((z2 - re(PI * PI / 6.0)).norm() < 1e-14);
        let z0 = zeta_jet(re(0.0), 1).unwrap();
        assert!((z0.values[0] - re(-0.5)).norm() < 1e-14);
        assert!((z0.values[1] - re(-0.5 * (2.0 * PI).ln())).norm() < 1e-14);
        // ζ(−2) = 0 through the reflected branch, ζ(−3) = 1/120.
        assert!(zeta_jet(re(-2.0), 0).unwrap().values[0].norm() < 1e-15);
        assert!((zeta_jet(re(-3.0), 0).unwrap().values[0] - re(1.0 / 120.0)).norm() < 1e-15);
    }

    #[test]
    fn pole_and_domain_errors() {
        assert!(matches!(zeta_jet(re(1.0), 0), Err(Error::Pole { .. })));
        assert!(matches!(
            zeta_jet(Complex64::new(0.5, 2200.0), 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(zeta_jet(re(2.0), 4), Err(Error::Domain(_))));
    }

    #[test]
    fn first_riemann_zero() {
        let z = zeta_jet(Complex64::new(0.5, 14.134_725_141_734_693), 0).unwrap();
        assert!(z.values[0].norm() < 1e-12);
    }

    #[test]
    fn branches_agree_at_the_seam() {
        for t in [0.3, 9.0, 120.0, 800.0] {
            let s = Complex64::new(-1.0, t);
            let direct = zeta_jet(s, 3).unwrap();
            let w = Complex64::new(1.0, 0.0) - s;
            let (zw, _) = euler_maclaurin(w, &ZetaConfig::default());
            let c = zw.0;
            let refl = (chi_jet(s).unwrap() * Jet([c[0], -c[1], c[2], -c[3]])).derivatives();
            for k in 0..4 {
                let scale = direct.values[k].norm().max(1.0);
                assert!(
                    (direct.values[k] - refl[k]).norm() < 1e-10 * scale,
                    "t={t} k={k} {} vs {}",
                    direct.values[k],
                    refl[k]
                );
            }
        }
    }
}
