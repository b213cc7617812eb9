//! Truncated Taylor arithmetic.
//!
//! A [`Jet`] stores the Taylor coefficients `c[k] = f^(k)(s) / k!` for
//! `k = 0..=3`. Products, quotients and exponentials follow the usual
//! Cauchy-product rules, so derivative bookkeeping for ζ, Γ and η reduces to
//! ordinary algebra on jets.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub const ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [Complex64; ORDER]);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const FACT: [f64; ORDER] = [1.0, 1.0, 2.0, 6.0];

impl Jet {
    pub fn constant(c: Complex64) -> Self {
        Jet([c, ZERO, ZERO, ZERO])
    }

    /// The identity function `s ↦ s + offset` expanded at `s`.
    pub fn variable(s: Complex64) -> Self {
        Jet([s, Complex64::new(1.0, 0.0), ZERO, ZERO])
    }

    pub fn from_derivatives(d: [Complex64; ORDER]) -> Self {
        let mut c = d;
        for (k, v) in c.iter_mut().enumerate() {
            *v /= FACT[k];
        }
        Jet(c)
    }

    pub fn derivatives(&self) -> [Complex64; ORDER] {
        let mut d = self.0;
        for (k, v) in d.iter_mut().enumerate() {
            *v *= FACT[k];
        }
        d
    }

    pub fn value(&self) -> Complex64 {
        self.0[0]
    }

    pub fn scale(self, k: Complex64) -> Self {
        Jet(self.0.map(|c| c * k))
    }

    /// Jet of `f'` given the jet of `f`; the top coefficient is lost.
    pub fn differentiate(self) -> Self {
        let c = self.0;
        Jet([c[1], c[2] * 2.0, c[3] * 3.0, ZERO])
    }

    pub fn recip(self) -> Self {
        let c = self.0;
        let r0 = c[0].inv();
        let r1 = -r0 * c[1] * r0;
        let r2 = -r0 * (c[1] * r1 + c[2] * r0);
        let r3 = -r0 * (c[1] * r2 + c[2] * r1 + c[3] * r0);
        Jet([r0, r1, r2, r3])
    }

    /// `exp` of a jet. The constant term is exponentiated directly; the
    /// nilpotent remainder uses its finite power series.
    pub fn exp(self) -> Self {
        let c = self.0;
        let e0 = c[0].exp();
        let e1 = c[1];
        let e2 = c[2] + c[1] * c[1] / 2.0;
        let e3 = c[3] + c[1] * c[2] + c[1] * c[1] * c[1] / 6.0;
        Jet([e0, e0 * e1, e0 * e2, e0 * e3])
    }

    pub fn conj(self) -> Self {
        Jet(self.0.map(|c| c.conj()))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut c = self.0;
        for k in 0..ORDER {
            c[k] += o.0[k];
        }
        Jet(c)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|c| -c))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let (a, b) = (self.0, o.0);
        Jet([
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
            a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_linear_matches_derivatives() {
        // exp(2s) at s = 0.3+0.1i: all derivatives are 2^k exp(2s).
        let s = c(0.3, 0.1);
        let j = Jet::variable(s).scale(c(2.0, 0.0)).exp();
        let d = j.derivatives();
        let e = (s * 2.0).exp();
        for (k, v) in d.iter().enumerate() {
            assert!((v - e * 2f64.powi(k as i32)).norm() < 1e-14);
        }
    }

    #[test]
    fn recip_times_self_is_one() {
        let j = Jet([c(1.5, -0.2), c(0.3, 0.7), c(-1.1, 0.2), c(0.05, 0.4)]);
        let p = j * j.recip();
        assert!((p.0[0] - c(1.0, 0.0)).norm() < 1e-15);
        for k in 1..ORDER {
            assert!(p.0[k].norm() < 1e-14);
        }
    }
}
