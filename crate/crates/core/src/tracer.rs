//! Predictor–corrector continuation of the level curves Re η = 0 (and, in
//! plot mode, Im η = 0).
//!
//! A curve is followed by stepping along the unit tangent, then pulling the
//! predicted point back onto the curve with Newton steps along ∇u. Step
//! length adapts to corrector effort, tangent turning, and the distance to
//! the nearest cached ζ′ zero, so arrival at an η-zero is detected
//! geometrically against the zero catalog.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::{eta_jet, re_eta_on_line, CRITICAL_T_MIN};
use crate::zerofinder::rootfind::brent;
use crate::zerofinder::{Rect, ZetaPrimeZero};

/// Which component of η vanishes along the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Re η = 0; the branch sign is the sign of Im η.
    ReZero,
    /// Im η = 0; the branch sign is the sign of Re η.
    ImZero,
}

impl Family {
    /// Multiplier c with Re(c·η) the vanishing component and Im(c·η) the
    /// component whose sign labels the branch (up to `sign_flip`).
    fn rotation(self) -> Complex64 {
        match self {
            Family::ReZero => Complex64::new(1.0, 0.0),
            Family::ImZero => Complex64::new(0.0, -1.0),
        }
    }

    /// Converts the sign of Im(c·η) into the sign of the labelling component.
    fn sign_flip(self) -> f64 {
        match self {
            Family::ReZero => 1.0,
            Family::ImZero => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceMode {
    /// Stop at the first critical-line crossing above t = 7 and at cached
    /// ζ′ zeros.
    Classify,
    /// Continue through crossings and η-zeros until the box is left.
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceConfig {
    pub bbox: Rect,
    pub step_init: f64,
    pub step_max: f64,
    pub arc_budget: f64,
    pub residual_tol: f64,
    pub mode: TraceMode,
}

impl TraceConfig {
    pub fn for_height(t_max: f64) -> Self {
        TraceConfig {
            bbox: Rect::new(-10.0, 10.0, CRITICAL_T_MIN, t_max + 20.0),
            step_init: 0.02,
            step_max: 0.2,
            arc_budget: 400.0,
            residual_tol: 1e-8,
            mode: TraceMode::Classify,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step_init > 0.0 && self.step_init <= self.step_max && self.arc_budget > 0.0) {
            return Err(Error::Domain(format!("invalid trace configuration {self:?}")));
        }
        Ok(())
    }
}

/// Smallest step the distance-to-zero control will impose.
const STEP_FLOOR: f64 = 1e-4;
/// A cached ζ′ zero closer than this, and consistent with |η|/|η′|, is
/// taken as the curve's endpoint.
const SNAP_RADIUS: f64 = 1e-3;
const MIN_STEP: f64 = 1e-9;
const AXIS_SNAP: f64 = 1e-6;
const MAX_HALVINGS: u32 = 8;
const CORRECTOR_STEPS: usize = 3;
const MAX_TURN: f64 = 0.5;
/// Radius around the poles s = 1, 0, −2, −4, … where tracing stops.
pub const POLE_RADIUS: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Edge {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Termination {
    CrossedCriticalLine { gamma: f64 },
    ReachedEtaZero { id: usize },
    BoxExit { edge: Edge },
    ArcBudgetExceeded,
    /// Entered the exclusion disc of a pole.
    NearPole,
    /// An Im η = 0 curve met the real axis, itself part of that level set.
    ReachedRealAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Anchor {
    ZetaPrimeZero(usize),
    ZetaZero(usize),
    Seed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourCurve {
    pub family: Family,
    pub points: Vec<Complex64>,
    /// Sign of the non-vanishing component along the curve.
    pub branch_sign: i8,
    pub anchor: Anchor,
    pub termination: Termination,
    /// Largest |u|/|∇u| (distance to the level set) over stored points.
    pub max_residual: f64,
    /// Interpolated critical-line crossings passed over (plot mode).
    pub crossings: Vec<f64>,
}

impl ContourCurve {
    pub fn arc_length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }
}

/// Immutable zero lists the tracer checks against.
#[derive(Debug, Clone, Default)]
pub struct ZeroCatalog {
    /// Sorted Riemann-zero ordinates; position + 1 is the index.
    zeta_gammas: Vec<f64>,
    /// (id, point), sorted by ordinate.
    prime: Vec<(usize, Complex64)>,
}

impl ZeroCatalog {
    pub fn new(zeta_gammas: Vec<f64>, prime: &[ZetaPrimeZero]) -> Self {
        let mut prime: Vec<(usize, Complex64)> = prime.iter().map(|z| (z.id, z.point())).collect();
        prime.sort_by(|a, b| a.1.im.total_cmp(&b.1.im));
        let mut zeta_gammas = zeta_gammas;
        zeta_gammas.sort_by(f64::total_cmp);
        ZeroCatalog { zeta_gammas, prime }
    }

    /// Adds the conjugate of every cached zero, for regions below the axis.
    pub fn with_conjugates(mut self) -> Self {
        let extra: Vec<(usize, Complex64)> =
            self.prime.iter().map(|&(id, p)| (id, p.conj())).collect();
        self.prime.extend(extra);
        self.prime.sort_by(|a, b| a.1.im.total_cmp(&b.1.im));
        self
    }

    pub fn zeta_gammas(&self) -> &[f64] {
        &self.zeta_gammas
    }

    /// 1-based index of the cached Riemann zero within `tol` of `gamma`.
    pub fn match_gamma(&self, gamma: f64, tol: f64) -> Option<usize> {
        let i = self.zeta_gammas.partition_point(|&g| g < gamma);
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter(|&k| k < self.zeta_gammas.len())
            .find(|&k| (self.zeta_gammas[k] - gamma).abs() <= tol)
            .map(|k| k + 1)
    }

    /// Nearest cached ζ′ zero other than `exclude`, within `radius`.
    pub fn nearest_prime(&self, p: Complex64, radius: f64, exclude: Option<usize>) -> Option<(usize, Complex64, f64)> {
        let lo = self.prime.partition_point(|z| z.1.im < p.im - radius);
        self.prime[lo..]
            .iter()
            .take_while(|z| z.1.im <= p.im + radius)
            .filter(|z| Some(z.0) != exclude)
            .map(|&(id, z)| (id, z, (z - p).norm()))
            .filter(|&(_, _, d)| d <= radius)
            .min_by(|a, b| a.2.total_cmp(&b.2))
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    /// c·η (scaled).
    w: Complex64,
    /// ∇ Re(c·η) as a complex number (u_σ + i u_t).
    grad: Complex64,
}

impl Sample {
    fn residual(&self) -> f64 {
        self.w.re.abs() / self.grad.norm()
    }

    /// |η|/|η′|, a first-order distance-to-zero estimate.
    fn zero_distance(&self) -> f64 {
        self.w.norm() / self.grad.norm()
    }

    fn tangent(&self) -> Complex64 {
        Complex64::new(0.0, 1.0) * self.grad / self.grad.norm()
    }
}

fn sample(p: Complex64, family: Family) -> Result<Sample> {
    let j = eta_jet(p)?;
    let c = family.rotation();
    let w = c * j.eta;
    let grad = (c * j.eta_d1).conj();
    if grad.norm() == 0.0 || !grad.norm().is_finite() {
        return Err(Error::DegenerateZero { re: p.re, im: p.im });
    }
    Ok(Sample { w, grad })
}

pub fn near_pole(p: Complex64) -> bool {
    if (p - Complex64::new(1.0, 0.0)).norm() < POLE_RADIUS {
        return true;
    }
    if p.re > POLE_RADIUS {
        return false;
    }
    let k = (-p.re / 2.0).round();
    (p - Complex64::new(-2.0 * k, 0.0)).norm() < POLE_RADIUS
}

/// The two unit directions leaving a simple η-zero along Re η = 0, labelled
/// by the sign Im η takes just off the zero: `[(d, +1), (−d, −1)]`.
pub fn branch_directions(z: &ZetaPrimeZero) -> Result<[(Complex64, i8); 2]> {
    let j = eta_jet(z.point())?;
    let e = j.eta_d1;
    if e.norm() <= 1e-10 {
        return Err(Error::DegenerateZero { re: z.beta, im: z.gamma });
    }
    let d = Complex64::new(0.0, 1.0) * e.conj() / e.norm();
    Ok([(d, 1), (-d, -1)])
}

/// Refines a σ = 1/2 crossing near `t_guess` to a root of Re η on the line.
fn refine_crossing(t_guess: f64, width: f64) -> Result<f64> {
    let mut w = width.max(1e-6);
    for _ in 0..12 {
        let (a, b) = (t_guess - w, t_guess + w);
        let (fa, fb) = (re_eta_on_line(a)?, re_eta_on_line(b)?);
        if (fa >= 0.0) != (fb >= 0.0) {
            return brent(re_eta_on_line, a, b, 1e-12);
        }
        w *= 2.0;
    }
    Err(Error::UnmatchedCrossing(t_guess))
}

fn clip_to_box(p: Complex64, q: Complex64, b: &Rect) -> (Complex64, Edge) {
    let mut best = (1.0, Edge::Top);
    let d = q - p;
    let mut consider = |lim: f64, from: f64, delta: f64, edge: Edge| {
        if delta != 0.0 {
            let lam = (lim - from) / delta;
            if (0.0..best.0).contains(&lam) || (lam >= 0.0 && lam <= best.0 && best.0 == 1.0) {
                best = (lam, edge);
            }
        }
    };
    if q.re < b.sigma_lo {
        consider(b.sigma_lo, p.re, d.re, Edge::Left);
    }
    if q.re > b.sigma_hi {
        consider(b.sigma_hi, p.re, d.re, Edge::Right);
    }
    if q.im < b.t_lo {
        consider(b.t_lo, p.im, d.im, Edge::Bottom);
    }
    if q.im > b.t_hi {
        consider(b.t_hi, p.im, d.im, Edge::Top);
    }
    (p + d * best.0.clamp(0.0, 1.0), best.1)
}

fn sign_of(x: f64) -> i8 {
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

/// Follows the level curve of `family` through `start` in direction
/// `initial_dir`. In plot mode the returned list splits the curve wherever
/// the labelling sign changes; in classify mode it has one element.
pub fn trace_curve(
    start: Complex64,
    initial_dir: Complex64,
    family: Family,
    anchor: Anchor,
    cfg: &TraceConfig,
    catalog: &ZeroCatalog,
) -> Result<Vec<ContourCurve>> {
    cfg.validate()?;
    if !cfg.bbox.contains(start, 1e-12) {
        return Err(Error::Domain(format!("trace start {start} outside box {}", cfg.bbox)));
    }
    let s0 = sample(start, family)?;
    if s0.residual() > cfg.residual_tol * 10.0 && s0.w.re.abs() > cfg.residual_tol {
        return Err(Error::StartOffCurve { re: start.re, im: start.im });
    }
    let exclude = match anchor {
        Anchor::ZetaPrimeZero(id) => Some(id),
        _ => None,
    };
    let flip = family.sign_flip();

    let mut curves = Vec::new();
    let mut points = vec![start];
    let mut crossings = Vec::new();
    let mut max_res = s0.residual().min(s0.zero_distance());
    let mut sign: Option<i8> = (s0.zero_distance() > 1e-9).then(|| sign_of(flip * s0.w.im));

    let mut p = start;
    let mut dir = initial_dir / initial_dir.norm();
    // Im(c·η) is strictly monotone along a level curve of Re(c·η); the raw
    // tangent points uphill, so the travel orientation relative to it is
    // fixed for the whole trace.
    let ascending = (s0.tangent() * dir.conj()).re >= 0.0;
    let mut h = cfg.step_init;
    let mut arc = 0.0;
    let mut halvings = 0u32;

    let finish = |points: Vec<Complex64>, sign: Option<i8>, term: Termination, max_res: f64, crossings: Vec<f64>| ContourCurve {
        family,
        points,
        branch_sign: sign.unwrap_or(1),
        anchor,
        termination: term,
        max_residual: max_res,
        crossings,
    };

    loop {
        // Distance-to-zero step control against the catalog.
        let mut step = h;
        if cfg.mode == TraceMode::Classify {
            if let Some((id, _, d)) = catalog.nearest_prime(p, 2.0 * h, exclude) {
                let here = sample(p, family)?;
                if d < SNAP_RADIUS && (here.zero_distance() - d).abs() <= 0.25 * d + 1e-9 {
                    points.push(catalog.nearest_prime(p, 2.0 * h, exclude).map(|z| z.1).unwrap_or(p));
                    return Ok(vec![finish(points, sign, Termination::ReachedEtaZero { id }, max_res, crossings)]);
                }
                step = step.min((0.5 * d).max(STEP_FLOOR));
            }
        }

        if step < MIN_STEP {
            return Err(Error::CorrectorDivergence { re: p.re, im: p.im });
        }
        let predicted = p + dir * step;
        let mut q = predicted;
        let mut s = sample(q, family)?;
        let mut iters = 0;
        while s.residual() > cfg.residual_tol && iters < CORRECTOR_STEPS {
            q -= s.grad * (s.w.re / s.grad.norm_sqr());
            s = sample(q, family)?;
            iters += 1;
        }
        let tangent = if ascending { s.tangent() } else { -s.tangent() };
        let turn = (tangent * dir.conj()).arg().abs();
        let converged = s.residual() <= cfg.residual_tol;
        let drift_ok = (q - predicted).norm() <= 0.5 * step;
        let new_sign = sign_of(flip * s.w.im);
        let sign_ok = match sign {
            Some(sg) => sg == new_sign || s.zero_distance() < 1e-9,
            None => true,
        };

        if !(converged && drift_ok && turn <= MAX_TURN) || (!sign_ok && cfg.mode == TraceMode::Classify && !passed_cached_zero(p, q, catalog, exclude)) {
            halvings += 1;
            if halvings > MAX_HALVINGS {
                return Err(Error::CorrectorDivergence { re: p.re, im: p.im });
            }
            h = step / 2.0;
            continue;
        }
        halvings = 0;

        if !sign_ok {
            match cfg.mode {
                TraceMode::Classify => {
                    // Stepped through a cached zero: snap to it.
                    let (id, z) = passed_cached_zero_id(p, q, catalog, exclude)
                        .expect("checked by passed_cached_zero");
                    points.push(z);
                    return Ok(vec![finish(points, sign, Termination::ReachedEtaZero { id }, max_res, crossings)]);
                }
                TraceMode::Plot => {
                    // Split at the zero: close the current piece at the
                    // sign change and start the next one there.
                    let cut = p + (q - p) * 0.5;
                    points.push(cut);
                    let piece = finish(std::mem::take(&mut points), sign, Termination::ArcBudgetExceeded, max_res, std::mem::take(&mut crossings));
                    curves.push(piece);
                    points.push(cut);
                    sign = Some(new_sign);
                }
            }
        }
        if sign.is_none() && s.zero_distance() > 1e-9 {
            sign = Some(new_sign);
        }

        // Critical-line crossing.
        if family == Family::ReZero && (p.re - 0.5) * (q.re - 0.5) < 0.0 {
            let lam = (0.5 - p.re) / (q.re - p.re);
            let t_guess = p.im + lam * (q.im - p.im);
            if t_guess > CRITICAL_T_MIN {
                match cfg.mode {
                    TraceMode::Classify => {
                        let gamma = refine_crossing(t_guess, (q - p).norm())?;
                        if catalog.match_gamma(gamma, 1e-6).is_none() {
                            return Err(Error::UnmatchedCrossing(gamma));
                        }
                        points.push(Complex64::new(0.5, gamma));
                        max_res = max_res.max(s.residual());
                        return Ok(vec![finish(points, sign, Termination::CrossedCriticalLine { gamma }, max_res, crossings)]);
                    }
                    TraceMode::Plot => crossings.push(t_guess),
                }
            }
        }

        if !cfg.bbox.contains(q, 0.0) {
            let (edge_point, edge) = clip_to_box(p, q, &cfg.bbox);
            points.push(edge_point);
            curves.push(finish(points, sign, Termination::BoxExit { edge }, max_res, crossings));
            return Ok(curves);
        }
        if family == Family::ImZero && p.im != 0.0 && (q.im.abs() < AXIS_SNAP || (p.im > 0.0) != (q.im > 0.0)) {
            let lam = if (p.im > 0.0) != (q.im > 0.0) { p.im / (p.im - q.im) } else { 1.0 };
            points.push(Complex64::new(p.re + lam * (q.re - p.re), 0.0));
            curves.push(finish(points, sign, Termination::ReachedRealAxis, max_res, crossings));
            return Ok(curves);
        }
        if near_pole(q) {
            points.push(q);
            curves.push(finish(points, sign, Termination::NearPole, max_res, crossings));
            return Ok(curves);
        }

        max_res = max_res.max(s.residual());
        arc += (q - p).norm();
        points.push(q);
        if arc > cfg.arc_budget {
            curves.push(finish(points, sign, Termination::ArcBudgetExceeded, max_res, crossings));
            return Ok(curves);
        }
        p = q;
        dir = tangent;
        h = if iters <= 2 && turn < 0.15 {
            (step * 1.5).min(cfg.step_max)
        } else {
            step
        };
    }
}

fn passed_cached_zero_id(p: Complex64, q: Complex64, catalog: &ZeroCatalog, exclude: Option<usize>) -> Option<(usize, Complex64)> {
    let mid = (p + q) * 0.5;
    let r = (q - p).norm();
    catalog
        .nearest_prime(mid, r.max(SNAP_RADIUS), exclude)
        .map(|(id, z, _)| (id, z))
}

fn passed_cached_zero(p: Complex64, q: Complex64, catalog: &ZeroCatalog, exclude: Option<usize>) -> bool {
    passed_cached_zero_id(p, q, catalog, exclude).is_some()
}

/// Classify-mode trace of one Re η = 0 branch.
pub fn trace_level_curve(
    start: Complex64,
    initial_dir: Complex64,
    branch_sign: i8,
    anchor: Anchor,
    cfg: &TraceConfig,
    catalog: &ZeroCatalog,
) -> Result<ContourCurve> {
    let cfg = TraceConfig { mode: TraceMode::Classify, ..*cfg };
    let mut c = trace_curve(start, initial_dir, Family::ReZero, anchor, &cfg, catalog)?
        .pop()
        .expect("classify mode yields one curve");
    c.branch_sign = branch_sign;
    Ok(c)
}

/// First σ = 1/2 crossing of a finished curve above t = 7, validated against
/// the cached Riemann zeros.
pub fn detect_crossing(curve: &ContourCurve, catalog: &ZeroCatalog) -> Result<Option<f64>> {
    if curve.points.is_empty() {
        return Err(Error::Domain("empty curve".into()));
    }
    let gamma = match curve.termination {
        Termination::CrossedCriticalLine { gamma } => Some(gamma),
        _ => curve.crossings.first().copied().or_else(|| {
            curve.points.windows(2).find_map(|w| {
                let (p, q) = (w[0], w[1]);
                if (p.re - 0.5) * (q.re - 0.5) < 0.0 {
                    let t = p.im + (0.5 - p.re) / (q.re - p.re) * (q.im - p.im);
                    (t > CRITICAL_T_MIN).then_some(t)
                } else {
                    None
                }
            })
        }),
    };
    match gamma {
        None => Ok(None),
        Some(g) => {
            let refined = match curve.termination {
                Termination::CrossedCriticalLine { .. } => g,
                _ => refine_crossing(g, 0.05)?,
            };
            if catalog.match_gamma(refined, 1e-6).is_none() {
                return Err(Error::UnmatchedCrossing(refined));
            }
            Ok(Some(refined))
        }
    }
}

/// Rightward trace from a Riemann zero 1/2 + iγ along its Re η = 0 curve.
pub fn trace_from_zeta_zero(index: usize, gamma: f64, cfg: &TraceConfig, catalog: &ZeroCatalog) -> Result<ContourCurve> {
    let start = Complex64::new(0.5, gamma);
    let s = sample(start, Family::ReZero)?;
    let mut dir = s.tangent();
    if dir.re < 0.0 {
        dir = -dir;
    }
    let sign = sign_of(s.w.im);
    trace_level_curve(start, dir, sign, Anchor::ZetaZero(index), cfg, catalog)
}
