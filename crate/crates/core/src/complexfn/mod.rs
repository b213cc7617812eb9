//! Special functions on ℂ: log Γ and polygammas, ζ with derivatives up to
//! third order, and the constants C and C₁.

mod constants;
mod gamma;
pub mod jet;
mod zeta;

use num_complex::Complex64;

pub use constants::{constants, FundamentalConstants};
pub use gamma::{digamma, gamma_jet, log_gamma, trigamma, GammaJet};
pub use zeta::{zeta_jet, zeta_jet_with, zeta_via_functional_equation, ZetaConfig, ZetaJet};

/// A point or value in the complex plane, `s = σ + it` throughout.
pub type ComplexValue = Complex64;
