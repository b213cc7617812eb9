use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. Numerical routines fail loudly with a
/// typed variant instead of returning sentinel values.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },
    #[error("precision budget exceeded: {0}")]
    Precision(String),
    #[error("argument outside supported domain: {0}")]
    Domain(String),
    #[error("zeta' too small for a logarithmic derivative at s = {re} + {im}i")]
    NearZero { re: f64, im: f64 },
    #[error("grid step too coarse near t = {t}: more than one sign change in a cell")]
    GridTooCoarse { t: f64 },
    #[error("winding count {expected} but refinement found {found} zeros in {rect}")]
    WindingMismatch { expected: i64, found: usize, rect: String },
    #[error("rectangle boundary passes through a zero and could not be perturbed: {0}")]
    BoundaryZero(String),
    #[error("bracket [{lo}, {hi}] does not change sign")]
    Bracket { lo: f64, hi: f64 },
    #[error("degenerate zero at {re} + {im}i (|eta'| too small)")]
    DegenerateZero { re: f64, im: f64 },
    #[error("corrector diverged at {re} + {im}i")]
    CorrectorDivergence { re: f64, im: f64 },
    #[error("start point {re} + {im}i is not on the level curve")]
    StartOffCurve { re: f64, im: f64 },
    #[error("critical-line crossing at t = {0} matches no cached Riemann zero")]
    UnmatchedCrossing(f64),
    #[error("expected a type-2 zero, got {0}")]
    TypeMismatch(String),
    #[error("{0} zeros remain unresolved below T")]
    IncompleteClassification(usize),
    #[error("zero cache incomplete: {0}")]
    IncompleteCache(String),
    #[error("quadrature failed to reach tolerance on [{lo}, {hi}]")]
    QuadratureFailure { lo: f64, hi: f64 },
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{} ingested zeros rejected: {}", .0.len(), .0.join("; "))]
    Validation(Vec<String>),
    #[error("missing cache file {0}")]
    MissingCache(PathBuf),
    #[error("invalid region: {0}")]
    Region(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn pole(s: num_complex::Complex64) -> Self {
        Error::Pole { re: s.re, im: s.im }
    }
}
