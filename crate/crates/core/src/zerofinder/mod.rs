//! Zeros of ζ on the critical line, complex zeros of ζ′, and the real zeros
//! ρ_n′ ∈ (−2n−2, −2n).

mod critical;
mod prime;
mod real;
pub mod rootfind;
pub mod winding;

use serde::{Deserialize, Serialize};

pub use critical::{zeta_zeros_in, LineScanConfig};
pub use prime::{polish_zeta_prime_zero, zeta_prime_zeros_in, PrimeSearchConfig};
pub use real::{real_zeta_prime_zero, real_zeta_prime_zeros};
pub use winding::{winding_number, Rect, WindingConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of_index(index: usize) -> Parity {
        if index % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Level-curve type of a zero. ζ zeros only take `One`, `Two` or
/// `Unresolved`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroType {
    Zero,
    One,
    Two,
    Unresolved,
}

impl ZeroType {
    pub fn from_count(n: usize) -> ZeroType {
        match n {
            0 => ZeroType::Zero,
            1 => ZeroType::One,
            2 => ZeroType::Two,
            _ => ZeroType::Unresolved,
        }
    }

    pub fn count(self) -> Option<usize> {
        match self {
            ZeroType::Zero => Some(0),
            ZeroType::One => Some(1),
            ZeroType::Two => Some(2),
            ZeroType::Unresolved => None,
        }
    }
}

/// A zero 1/2 + iγ of ζ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaZero {
    /// 1-based, counting from t = 7 upward.
    pub index: usize,
    pub gamma: f64,
    pub parity: Parity,
    #[serde(rename = "type")]
    pub zero_type: ZeroType,
    pub terminal_zero_id: Option<usize>,
    pub pair_partner_index: Option<usize>,
}

/// A complex zero β′ + iγ′ of ζ′.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaPrimeZero {
    /// 1-based position in the list sorted by γ′.
    pub id: usize,
    pub beta: f64,
    pub gamma: f64,
    #[serde(rename = "type")]
    pub zero_type: ZeroType,
    pub crossings: Vec<f64>,
    pub kappa: Option<f64>,
    pub theta: Option<f64>,
    pub scaled_displacement: Option<f64>,
}

impl ZetaPrimeZero {
    pub fn new(id: usize, beta: f64, gamma: f64) -> Self {
        ZetaPrimeZero {
            id,
            beta,
            gamma,
            zero_type: ZeroType::Unresolved,
            crossings: Vec::new(),
            kappa: None,
            theta: None,
            scaled_displacement: None,
        }
    }

    pub fn point(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.beta, self.gamma)
    }
}

/// The real zero of ζ′ in (−2n−2, −2n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealZetaPrimeZero {
    pub n: usize,
    pub value: f64,
}
