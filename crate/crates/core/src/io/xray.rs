//! X-ray plots: the four sign-coloured families of Re η = 0 and Im η = 0
//! in a rectangle, sampled by plot-mode tracing.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::eta_jet;
use crate::tracer::{trace_curve, Anchor, Family, TraceConfig, TraceMode, ZeroCatalog};
use crate::zerofinder::rootfind::brent;
use crate::zerofinder::{RealZetaPrimeZero, Rect, ZetaPrimeZero};

/// Largest |t| at which η can be evaluated.
const MAX_HEIGHT: f64 = 2000.0;
const POLE_SEED_RADIUS: f64 = 0.1;
const POLE_SEED_SAMPLES: usize = 720;
/// A seed this close to an already traced curve of its family is skipped.
const SEED_MERGE: f64 = 2e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    /// Im η = 0, Re η > 0.
    Red,
    /// Re η = 0, Im η > 0.
    Green,
    /// Im η = 0, Re η < 0.
    Cyan,
    /// Re η = 0, Im η < 0.
    Purple,
}

impl CurveFamily {
    pub const ALL: [CurveFamily; 4] = [CurveFamily::Red, CurveFamily::Green, CurveFamily::Cyan, CurveFamily::Purple];

    pub fn of(family: Family, sign: i8) -> Self {
        match (family, sign >= 0) {
            (Family::ReZero, true) => CurveFamily::Green,
            (Family::ReZero, false) => CurveFamily::Purple,
            (Family::ImZero, true) => CurveFamily::Red,
            (Family::ImZero, false) => CurveFamily::Cyan,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveFamily::Red => "red",
            CurveFamily::Green => "green",
            CurveFamily::Cyan => "cyan",
            CurveFamily::Purple => "purple",
        }
    }

    pub fn hue(self) -> f64 {
        match self {
            CurveFamily::Red => 0.0,
            CurveFamily::Green => 90.0,
            CurveFamily::Cyan => 180.0,
            CurveFamily::Purple => 270.0,
        }
    }

    /// sRGB hex colour for the hue at full saturation.
    pub fn color(self) -> String {
        hsv_hex(self.hue(), 1.0, 0.85)
    }

    pub fn is_re_zero(self) -> bool {
        matches!(self, CurveFamily::Green | CurveFamily::Purple)
    }
}

fn hsv_hex(h: f64, s: f64, v: f64) -> String {
    let c = v * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    let to = |u: f64| ((u + m) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", to(r), to(g), to(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XrayPlotSpec {
    pub region: Rect,
    pub zeta_only: bool,
    /// Sampling step along the boundary when looking for seeds.
    pub resolution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotCurve {
    pub family: CurveFamily,
    pub points: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XrayPlot {
    pub spec: XrayPlotSpec,
    pub curves: Vec<PlotCurve>,
    /// ζ′ zeros inside the region (markers).
    pub zeros: Vec<Complex64>,
    /// Poles of η inside the region (markers).
    pub poles: Vec<Complex64>,
    /// Seeds whose trace failed numerically; their curves may be missing.
    pub failed_seeds: usize,
}

fn poles_in(r: &Rect) -> Vec<Complex64> {
    if !(r.t_lo <= 0.0 && r.t_hi >= 0.0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    if r.sigma_lo <= 1.0 && 1.0 <= r.sigma_hi {
        out.push(Complex64::new(1.0, 0.0));
    }
    let mut p = 0.0;
    while p >= r.sigma_lo {
        if p <= r.sigma_hi {
            out.push(Complex64::new(p, 0.0));
        }
        p -= 2.0;
    }
    out
}

fn component(s: Complex64, family: Family) -> Result<f64> {
    let e = eta_jet(s)?.eta;
    Ok(match family {
        Family::ReZero => e.re,
        Family::ImZero => e.im,
    })
}

/// Spatial hash of traced segments per family, for seed de-duplication.
#[derive(Default)]
struct SegmentIndex {
    cells: HashMap<(CurveFamily, i64, i64), Vec<(Complex64, Complex64)>>,
}

const CELL: f64 = 0.25;

fn cell_of(x: f64) -> i64 {
    (x / CELL).floor() as i64
}

fn seg_dist(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let l2 = d.norm_sqr();
    let lam = if l2 == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / l2).clamp(0.0, 1.0) };
    (p - (a + d * lam)).norm()
}

impl SegmentIndex {
    fn insert(&mut self, fam: CurveFamily, pts: &[Complex64]) {
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            for i in cell_of(a.re.min(b.re))..=cell_of(a.re.max(b.re)) {
                for j in cell_of(a.im.min(b.im))..=cell_of(a.im.max(b.im)) {
                    self.cells.entry((fam, i, j)).or_default().push((a, b));
                }
            }
        }
    }

    fn near(&self, fams: &[CurveFamily], p: Complex64, r: f64) -> bool {
        let (ci, cj) = (cell_of(p.re), cell_of(p.im));
        fams.iter().any(|&f| {
            (ci - 1..=ci + 1).any(|i| {
                (cj - 1..=cj + 1).any(|j| {
                    self.cells
                        .get(&(f, i, j))
                        .is_some_and(|v| v.iter().any(|&(a, b)| seg_dist(p, a, b) <= r))
                })
            })
        })
    }
}

fn families_of(f: Family) -> [CurveFamily; 2] {
    [CurveFamily::of(f, 1), CurveFamily::of(f, -1)]
}

/// Sign changes of `f` along a parametrised path, refined by Brent.
fn sign_change_seeds<P, F>(path: P, n: usize, f: F) -> Vec<Complex64>
where
    P: Fn(f64) -> Complex64,
    F: Fn(Complex64) -> Option<f64>,
{
    let xs: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let vals: Vec<Option<f64>> = xs.iter().map(|&x| f(path(x))).collect();
    let mut out = Vec::new();
    for k in 0..n {
        if let (Some(a), Some(b)) = (vals[k], vals[k + 1]) {
            if a == 0.0 {
                out.push(path(xs[k]));
            } else if (a > 0.0) != (b > 0.0) && b != 0.0 {
                let g = |x: f64| f(path(x)).ok_or(Error::Domain("seed evaluation failed".into()));
                if let Ok(x) = brent(g, xs[k], xs[k + 1], 1e-13) {
                    out.push(path(x));
                }
            }
        }
    }
    out
}

/// Traces all four families (or only Re η = 0 with `zeta_only`) in the
/// region. `prime` and `real` supply η-zeros used as extra seeds and
/// markers.
pub fn xray_plot(spec: &XrayPlotSpec, prime: &[ZetaPrimeZero], real: &[RealZetaPrimeZero]) -> Result<XrayPlot> {
    let r = spec.region;
    if !(r.sigma_lo <= r.sigma_hi && r.t_lo <= r.t_hi) || r.t_lo.abs().max(r.t_hi.abs()) > MAX_HEIGHT {
        return Err(Error::Region(format!("region {r} is reversed or beyond |t| ≤ {MAX_HEIGHT}")));
    }
    if !(spec.resolution > 0.0) {
        return Err(Error::Region(format!("resolution must be positive, got {}", spec.resolution)));
    }
    let mut plot = XrayPlot { spec: *spec, curves: Vec::new(), zeros: Vec::new(), poles: Vec::new(), failed_seeds: 0 };
    if r.width() == 0.0 || r.height() == 0.0 {
        return Ok(plot);
    }
    plot.poles = poles_in(&r);

    // η-zeros in the region: complex ζ′ zeros (and conjugates) plus ρ_n′.
    let mut etazeros: Vec<(Complex64, bool)> = Vec::new();
    for z in prime {
        for p in [z.point(), z.point().conj()] {
            if r.contains(p, 0.0) {
                etazeros.push((p, false));
            }
        }
    }
    for z in real {
        let p = Complex64::new(z.value, 0.0);
        if r.contains(p, 0.0) {
            etazeros.push((p, true));
        }
    }
    etazeros.sort_by(|a, b| a.0.im.total_cmp(&b.0.im).then(a.0.re.total_cmp(&b.0.re)));
    plot.zeros = etazeros.iter().map(|z| z.0).collect();

    let cfg = TraceConfig {
        bbox: r,
        step_init: 0.01,
        step_max: 0.05,
        arc_budget: 20.0 * (r.width() + r.height()) + 100.0,
        residual_tol: 1e-8,
        mode: TraceMode::Plot,
    };
    let catalog = ZeroCatalog::default();
    let axis_inside = r.t_lo <= 0.0 && r.t_hi >= 0.0;
    let families: Vec<Family> = if spec.zeta_only { vec![Family::ReZero] } else { vec![Family::ReZero, Family::ImZero] };
    let mut index = SegmentIndex::default();

    for &family in &families {
        let fams = families_of(family);
        let run = |start: Complex64, dirs: &[Complex64], plot: &mut XrayPlot, index: &mut SegmentIndex| {
            for &d in dirs {
                match trace_curve(start, d, family, Anchor::Seed, &cfg, &catalog) {
                    Ok(pieces) => {
                        for c in pieces {
                            if c.points.len() < 2 {
                                continue;
                            }
                            let fam = CurveFamily::of(family, c.branch_sign);
                            index.insert(fam, &c.points);
                            plot.curves.push(PlotCurve { family: fam, points: c.points });
                        }
                    }
                    Err(_) => plot.failed_seeds += 1,
                }
            }
        };

        // Zeros first: both branches of the family leave each η-zero.
        for &(z, on_axis) in &etazeros {
            if on_axis && family == Family::ImZero {
                continue;
            }
            let e = eta_jet(z)?.eta_d1;
            let d = match family {
                Family::ReZero => Complex64::new(0.0, 1.0) * e.conj() / e.norm(),
                Family::ImZero => e.conj() / e.norm(),
            };
            let dirs: Vec<Complex64> = if on_axis {
                [d, -d].into_iter().filter(|v| r.contains(z + *v * 1e-3, 0.0)).collect()
            } else {
                vec![d, -d]
            };
            if !index.near(&fams, z, SEED_MERGE) {
                run(z, &dirs, &mut plot, &mut index);
            }
        }

        // Boundary sign changes.
        let value = |s: Complex64| -> Option<f64> {
            if crate::tracer::near_pole(s) || (family == Family::ImZero && s.im == 0.0) {
                None
            } else {
                component(s, family).ok()
            }
        };
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let edges: [Box<dyn Fn(f64) -> Complex64>; 4] = [
            Box::new(move |x| c(r.sigma_lo + x * r.width(), r.t_lo)),
            Box::new(move |x| c(r.sigma_hi, r.t_lo + x * r.height())),
            Box::new(move |x| c(r.sigma_hi - x * r.width(), r.t_hi)),
            Box::new(move |x| c(r.sigma_lo, r.t_hi - x * r.height())),
        ];
        for (k, edge) in edges.iter().enumerate() {
            let len = if k % 2 == 0 { r.width() } else { r.height() };
            let n = ((len / spec.resolution).ceil() as usize).max(1);
            for seed in sign_change_seeds(edge, n, value) {
                if index.near(&fams, seed, SEED_MERGE) {
                    continue;
                }
                let t = tangent(seed, family)?;
                run(seed, &[t, -t], &mut plot, &mut index);
            }
        }

        // Small circles around poles.
        for &p in &plot.poles.clone() {
            let circle = |x: f64| p + Complex64::from_polar(POLE_SEED_RADIUS, 2.0 * PI * x);
            let inside = |s: Complex64| if r.contains(s, 0.0) && !(axis_inside && s.im == 0.0) { value(s) } else { None };
            for seed in sign_change_seeds(circle, POLE_SEED_SAMPLES, inside) {
                if index.near(&fams, seed, SEED_MERGE) {
                    continue;
                }
                let t = tangent(seed, family)?;
                run(seed, &[t, -t], &mut plot, &mut index);
            }
        }
    }

    if axis_inside && !spec.zeta_only {
        plot.curves.extend(real_axis_curves(&r, spec.resolution)?);
    }
    Ok(plot)
}

fn tangent(s: Complex64, family: Family) -> Result<Complex64> {
    let e = eta_jet(s)?.eta_d1;
    let c = match family {
        Family::ReZero => Complex64::new(1.0, 0.0),
        Family::ImZero => Complex64::new(0.0, -1.0),
    };
    let g = (c * e).conj();
    Ok(Complex64::new(0.0, 1.0) * g / g.norm())
}

/// The real axis lies in Im η = 0; it is coloured by the sign of Re η and
/// broken at poles and at sign changes.
fn real_axis_curves(r: &Rect, resolution: f64) -> Result<Vec<PlotCurve>> {
    let n = ((r.width() / resolution).ceil() as usize).max(1);
    let mut out = Vec::new();
    let mut current: Option<PlotCurve> = None;
    for k in 0..=n {
        let s = Complex64::new(r.sigma_lo + r.width() * k as f64 / n as f64, 0.0);
        let fam = if crate::tracer::near_pole(s) {
            None
        } else {
            let v = eta_jet(s)?.eta.re;
            (v != 0.0).then(|| if v > 0.0 { CurveFamily::Red } else { CurveFamily::Cyan })
        };
        match (fam, current.as_mut()) {
            (Some(f), Some(c)) if c.family == f => c.points.push(s),
            (f, _) => {
                if let Some(c) = current.take() {
                    if c.points.len() >= 2 {
                        out.push(c);
                    }
                }
                current = f.map(|f| PlotCurve { family: f, points: vec![s] });
            }
        }
    }
    if let Some(c) = current {
        if c.points.len() >= 2 {
            out.push(c);
        }
    }
    Ok(out)
}

/// σ = 1/2 crossings above t = 7 of the Re η = 0 polylines, linearly
/// interpolated and merged within `merge`.
pub fn critical_crossings(plot: &XrayPlot, merge: f64) -> Vec<f64> {
    let mut ts: Vec<f64> = plot
        .curves
        .iter()
        .filter(|c| c.family.is_re_zero())
        .flat_map(|c| {
            c.points.windows(2).filter_map(|w| {
                let (p, q) = (w[0], w[1]);
                if (p.re - 0.5) * (q.re - 0.5) < 0.0 || (q.re == 0.5 && p.re != 0.5) {
                    let t = p.im + (0.5 - p.re) / (q.re - p.re) * (q.im - p.im);
                    (t > crate::eta::CRITICAL_T_MIN).then_some(t)
                } else {
                    None
                }
            })
        })
        .collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|a, b| (*a - *b).abs() <= merge);
    ts
}

/// SVG 1.1 document for the plot.
pub fn render_svg(plot: &XrayPlot) -> String {
    let r = plot.spec.region;
    let span = r.width().max(r.height());
    let scale = if span > 0.0 { (2400.0 / span).min(100.0) } else { 1.0 };
    let (w, h) = (r.width() * scale, r.height() * scale);
    let x = |s: f64| (s - r.sigma_lo) * scale;
    let y = |t: f64| (r.t_hi - t) * scale;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    out.push_str("<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" \"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.2}\" height=\"{h:.2}\" viewBox=\"0 0 {w:.2} {h:.2}\">"
    );
    let _ = writeln!(
        out,
        "<title>Level curves of eta, {} &lt;= sigma &lt;= {}, {} &lt;= t &lt;= {}</title>",
        r.sigma_lo, r.sigma_hi, r.t_lo, r.t_hi
    );
    if w > 0.0 && h > 0.0 {
        let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"white\"/>");
        if r.sigma_lo <= 0.5 && 0.5 <= r.sigma_hi {
            let _ = writeln!(
                out,
                "<line id=\"critical-line\" x1=\"{0:.2}\" y1=\"0\" x2=\"{0:.2}\" y2=\"{h:.2}\" stroke=\"#999999\" stroke-width=\"0.5\" stroke-dasharray=\"4,4\"/>",
                x(0.5)
            );
        }
    }
    for fam in CurveFamily::ALL {
        if plot.spec.zeta_only && !fam.is_re_zero() {
            continue;
        }
        let _ = writeln!(out, "<g id=\"{}\" stroke=\"{}\" stroke-width=\"1\" fill=\"none\">", fam.name(), fam.color());
        for c in plot.curves.iter().filter(|c| c.family == fam) {
            let mut d = String::new();
            for (i, p) in c.points.iter().enumerate() {
                let _ = write!(d, "{}{:.2} {:.2}", if i == 0 { "M" } else { " L" }, x(p.re), y(p.im));
            }
            let _ = writeln!(out, "<path d=\"{d}\"/>");
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g id=\"zeros\" fill=\"black\">\n");
    for z in &plot.zeros {
        let _ = writeln!(out, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\"/>", x(z.re), y(z.im));
    }
    out.push_str("</g>\n<g id=\"poles\" fill=\"none\" stroke=\"black\">\n");
    for p in &plot.poles {
        let _ = writeln!(out, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\"/>", x(p.re), y(p.im));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hues_map_to_expected_colors() {
        assert_eq!(hsv_hex(0.0, 1.0, 1.0), "#ff0000");
        assert_eq!(hsv_hex(180.0, 1.0, 1.0), "#00ffff");
        assert_eq!(CurveFamily::of(Family::ReZero, 1), CurveFamily::Green);
        assert_eq!(CurveFamily::of(Family::ImZero, -1), CurveFamily::Cyan);
        let hues: Vec<f64> = CurveFamily::ALL.iter().map(|f| f.hue()).collect();
        assert_eq!(hues, vec![0.0, 90.0, 180.0, 270.0]);
    }

    #[test]
    fn empty_region_gives_valid_empty_svg() {
        let spec = XrayPlotSpec { region: Rect::new(1.0, 1.0, 20.0, 20.0), zeta_only: false, resolution: 0.05 };
        let plot = xray_plot(&spec, &[], &[]).unwrap();
        assert!(plot.curves.is_empty());
        let svg = render_svg(&plot);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn reversed_region_rejected() {
        let spec = XrayPlotSpec { region: Rect::new(2.0, 1.0, 20.0, 30.0), zeta_only: false, resolution: 0.05 };
        assert!(matches!(xray_plot(&spec, &[], &[]), Err(Error::Region(_))));
    }

    #[test]
    fn poles_listed_on_axis_only() {
        assert_eq!(poles_in(&Rect::new(-5.0, 2.0, 0.0, 10.0)).len(), 4);
        assert!(poles_in(&Rect::new(-5.0, 2.0, 1.0, 10.0)).is_empty());
    }
}
