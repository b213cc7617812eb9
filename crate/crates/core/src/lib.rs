//! Level curves of η(s) = π^(−s/2) Γ(s/2) ζ′(s), zeros of ζ and ζ′, and
//! the classification and statistics built on them.

pub mod classify;
pub mod complexfn;
pub mod error;
pub mod eta;
pub mod geometry;
pub mod io;
pub mod tracer;
pub mod zerofinder;
pub mod zhang;

pub use error::{Error, Result};
