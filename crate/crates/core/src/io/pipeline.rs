//! The command pipeline: scan, classify, xray, zhang, stats and ingest.
//!
//! Each command reads and writes a cache directory and an output
//! directory, and returns an [`Outcome`]: summary lines for the terminal
//! and whether every numeric verification passed.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cache::{ZeroCache, COMPUTED};
use super::report::{write_csv, write_json, write_table};
use super::xray::{critical_crossings, render_svg, xray_plot, XrayPlotSpec};
use crate::classify::{bijection_audit, census, classify_all, conjecture_fit, BijectionAudit, TypeCensus};
use crate::error::{Error, Result};
use crate::eta::{f_value, CRITICAL_T_MIN};
use crate::geometry::{curvature_normal, proxy_histogram, Histogram, ProxyKind, DISPLACEMENT_BINS, THETA_BINS};
use crate::tracer::TraceConfig;
use crate::zerofinder::{
    polish_zeta_prime_zero, real_zeta_prime_zeros, zeta_prime_zeros_in, zeta_zeros_in, LineScanConfig,
    PrimeSearchConfig, Rect, ZeroType, ZetaPrimeZero,
};
use crate::zhang::{
    constants_ledger, gap_integral, verify_F_positive, tail_term_checks, F_lower_bound, HEAD_HEIGHT,
    REAL_HEAD_TERMS,
};

pub const T_MAX_LIMIT: f64 = 2000.0;
/// ζ′ zeros are searched in this strip of σ.
pub const PRIME_SIGMA: (f64, f64) = (0.5, 3.0);
/// Distance below which two ζ′ zeros are the same zero.
pub const DEDUP_TOL: f64 = 1e-6;
/// An ingested zero must move less than this under Newton polishing.
pub const INGEST_MOVE_TOL: f64 = 1e-6;
/// Extra height the caches need above the classification height.
pub const CLASSIFY_MARGIN: f64 = 20.0;
pub const GAP_INTEGRALS: usize = 100;
pub const DOMINANCE_SAMPLES: usize = 200;
pub const DOMINANCE_SEED: u64 = 20_240_601;
pub const F_GRID_STEP: f64 = 0.01;
pub const F_GRID_START: f64 = 7.5;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub verified: bool,
}

impl Outcome {
    fn new() -> Self {
        Outcome { lines: Vec::new(), verified: true }
    }

    fn check(&mut self, name: &str, ok: bool, detail: String) {
        self.lines.push(format!("{name}: {} ({detail})", if ok { "PASS" } else { "FAIL" }));
        self.verified &= ok;
    }
}

pub fn check_tmax(t_max: f64) -> Result<()> {
    if t_max > CRITICAL_T_MIN && t_max <= T_MAX_LIMIT {
        Ok(())
    } else {
        Err(Error::Domain(format!("T_max must satisfy 7 < T_max <= {T_MAX_LIMIT}, got {t_max}")))
    }
}

fn load_or_empty(dir: &Path) -> Result<ZeroCache> {
    if ZeroCache::exists(dir) {
        ZeroCache::load(dir)
    } else {
        Ok(ZeroCache::empty())
    }
}

/// Extends the caches in `dir` so that ζ and ζ′ zeros are complete below
/// `t_max` and ρ_n′ is present for n ≤ 30. Re-running with the same or a
/// smaller height leaves the files untouched.
pub fn scan(dir: &Path, t_max: f64) -> Result<(ZeroCache, Outcome)> {
    check_tmax(t_max)?;
    let mut cache = load_or_empty(dir)?;
    let mut out = Outcome::new();
    let have = cache.manifest.scanned_to;
    if have >= t_max && cache.real.len() >= REAL_HEAD_TERMS && ZeroCache::exists(dir) {
        out.lines.push(format!("cache already complete to t = {have}"));
        summarize(&cache, t_max, &mut out);
        return Ok((cache, out));
    }
    if have < t_max {
        let lo = have.max(CRITICAL_T_MIN);
        let zeta = zeta_zeros_in(lo, t_max, &LineScanConfig::default())?;
        let last = cache.zeta.last().map_or(f64::NEG_INFINITY, |z| z.gamma);
        cache.zeta.extend(zeta.into_iter().filter(|z| z.gamma > last + DEDUP_TOL));

        let found = zeta_prime_zeros_in(&Rect::new(PRIME_SIGMA.0, PRIME_SIGMA.1, lo, t_max), &PrimeSearchConfig::default())?;
        let mut added = false;
        for z in found.into_iter().filter(|z| z.gamma < t_max) {
            if !has_prime(&cache.prime, z.point()) {
                cache.prime.push(z);
                cache.prime_provenance.push(COMPUTED.into());
                added = true;
            }
        }
        if added {
            cache.renumber_prime();
        }
        cache.manifest.scanned_to = t_max;
    }
    if cache.real.len() < REAL_HEAD_TERMS {
        cache.real = real_zeta_prime_zeros(REAL_HEAD_TERMS)?;
        cache.manifest.real_count = cache.real.len();
    }
    cache.save(dir)?;
    summarize(&cache, t_max, &mut out);
    Ok((cache, out))
}

fn has_prime(list: &[ZetaPrimeZero], p: Complex64) -> bool {
    list.iter().any(|z| (z.point() - p).norm() <= DEDUP_TOL)
}

fn summarize(cache: &ZeroCache, t_max: f64, out: &mut Outcome) {
    let zeta = cache.zeta.iter().filter(|z| z.gamma < t_max).count();
    let prime = cache.prime.iter().filter(|z| z.gamma > CRITICAL_T_MIN && z.gamma < t_max).count();
    out.lines.push(format!("zeta zeros below {t_max}: {zeta}"));
    out.lines.push(format!("zeta' zeros with 7 < t < {t_max}: {prime}"));
    out.lines.push(format!("real zeta' zeros: {}", cache.real.len()));
}

#[derive(Debug, Clone, Serialize)]
struct PrimeRow {
    id: usize,
    beta: f64,
    gamma: f64,
    #[serde(rename = "type")]
    zero_type: ZeroType,
    crossings: String,
    kappa: Option<f64>,
    theta: Option<f64>,
    scaled_displacement: Option<f64>,
    provenance: String,
}

#[derive(Debug, Clone, Serialize)]
struct ZetaRow {
    index: usize,
    gamma: f64,
    parity: crate::zerofinder::Parity,
    #[serde(rename = "type")]
    zero_type: ZeroType,
    terminal_zero_id: Option<usize>,
    pair_partner_index: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
struct CensusRow {
    #[serde(rename = "T")]
    t: f64,
    n0p: usize,
    n1: usize,
    n2_pairs: usize,
    riemann_total: usize,
    riemann_type1: usize,
    riemann_type2_pairs: usize,
    n1_plus_2n2_residual: f64,
    n0_plus_n1_plus_n2_residual: f64,
    n2_minus_n0_residual: f64,
    n1_plus_2n0_residual: f64,
}

impl From<&TypeCensus> for CensusRow {
    fn from(c: &TypeCensus) -> Self {
        CensusRow {
            t: c.t,
            n0p: c.n0p,
            n1: c.n1,
            n2_pairs: c.n2_pairs,
            riemann_total: c.riemann_total,
            riemann_type1: c.riemann_type1,
            riemann_type2_pairs: c.riemann_type2_pairs,
            n1_plus_2n2_residual: c.residuals["n1_plus_2n2"],
            n0_plus_n1_plus_n2_residual: c.residuals["n0_plus_n1_plus_n2"],
            n2_minus_n0_residual: c.residuals["n2_minus_n0"],
            n1_plus_2n0_residual: c.residuals["n1_plus_2n0"],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub census: Option<TypeCensus>,
    /// Censuses at T/10, 2T/10, …, T.
    pub census_series: Vec<TypeCensus>,
    /// (c1, c2) in n1 ≈ c1·T log T, n2 ≈ c2·T log T.
    pub conjecture_fit: Option<(f64, f64)>,
    pub audit: BijectionAudit,
    pub unresolved: usize,
}

/// Classifies all zeros below `t_max`, stores types and geometry in the
/// cache and writes census, per-zero, pair and unresolved reports.
pub fn classify(dir: &Path, out_dir: &Path, t_max: f64) -> Result<(ClassifyReport, Outcome)> {
    check_tmax(t_max)?;
    if !ZeroCache::exists(dir) {
        return Err(Error::MissingCache(dir.to_path_buf()));
    }
    let mut cache = ZeroCache::load(dir)?;
    let need = t_max + CLASSIFY_MARGIN;
    if cache.manifest.scanned_to < need || cache.real.len() < REAL_HEAD_TERMS {
        cache = scan(dir, need.min(T_MAX_LIMIT))?.0;
    }
    let mut cfg = TraceConfig::for_height(t_max);
    cfg.bbox.t_hi = cfg.bbox.t_hi.min(cache.manifest.scanned_to);
    let c = classify_all(&cache.zeta, &cache.prime, cache.manifest.scanned_to, t_max, &cfg)?;

    let geometry: Vec<Option<crate::geometry::GeometryProxy>> = c
        .prime
        .par_iter()
        .map(|z| if z.gamma > CRITICAL_T_MIN { curvature_normal(z).ok() } else { None })
        .collect();
    let mut prime = c.prime.clone();
    for (z, g) in prime.iter_mut().zip(geometry) {
        if let Some(g) = g {
            z.kappa = Some(g.kappa);
            z.theta = Some(g.theta);
            z.scaled_displacement = Some(g.scaled_displacement);
        }
    }
    cache.zeta = c.zeta.clone();
    cache.prime = prime;
    cache.manifest.classified_to = Some(t_max);
    cache.save(dir)?;

    let mut out = Outcome::new();
    let audit = bijection_audit(&c, t_max);
    let (census_now, series, fit) = if c.unresolved.is_empty() {
        let series: Vec<TypeCensus> =
            (1..=10).map(|k| t_max * k as f64 / 10.0).filter(|&t| t > CRITICAL_T_MIN).map(|t| census(&c, t)).collect::<Result<_>>()?;
        let fit = conjecture_fit(&series).ok();
        (series.last().cloned(), series, fit)
    } else {
        (None, Vec::new(), None)
    };

    let prime_rows: Vec<PrimeRow> = cache
        .prime
        .iter()
        .zip(&cache.prime_provenance)
        .filter(|(z, _)| z.gamma > CRITICAL_T_MIN && z.gamma < t_max)
        .map(|(z, p)| PrimeRow {
            id: z.id,
            beta: z.beta,
            gamma: z.gamma,
            zero_type: z.zero_type,
            crossings: z.crossings.iter().map(|g| format!("{g}")).collect::<Vec<_>>().join(";"),
            kappa: z.kappa,
            theta: z.theta,
            scaled_displacement: z.scaled_displacement,
            provenance: p.clone(),
        })
        .collect();
    let zeta_rows: Vec<ZetaRow> = cache
        .zeta
        .iter()
        .filter(|z| z.gamma > CRITICAL_T_MIN && z.gamma < t_max)
        .map(|z| ZetaRow {
            index: z.index,
            gamma: z.gamma,
            parity: z.parity,
            zero_type: z.zero_type,
            terminal_zero_id: z.terminal_zero_id,
            pair_partner_index: z.pair_partner_index,
        })
        .collect();
    let pairs: Vec<_> = c.pairs.iter().filter(|p| p.gamma_plus < t_max).cloned().collect();
    write_csv(&out_dir.join("zeta_prime_types.csv"), &prime_rows)?;
    write_csv(&out_dir.join("zeta_types.csv"), &zeta_rows)?;
    write_csv(&out_dir.join("pairs.csv"), &pairs)?;
    write_csv(&out_dir.join("unresolved.csv"), &c.unresolved)?;
    write_csv(&out_dir.join("census.csv"), &series.iter().map(CensusRow::from).collect::<Vec<_>>())?;

    let report = ClassifyReport {
        census: census_now.clone(),
        census_series: series,
        conjecture_fit: fit,
        audit: audit.clone(),
        unresolved: c.unresolved.len(),
    };
    write_json(&out_dir.join("census.json"), &report)?;

    if let Some(cs) = &census_now {
        out.lines.push(format!("census at T = {t_max}: type 0 = {}, type 1 = {}, type 2 = {}", cs.n0p, cs.n1, cs.n2_pairs));
        out.lines.push(format!(
            "riemann zeros: {} (type 1: {}, type 2 pairs: {})",
            cs.riemann_total, cs.riemann_type1, cs.riemann_type2_pairs
        ));
        for (k, v) in &cs.residuals {
            out.lines.push(format!("{k}: observed - main term residual {v:.3}"));
        }
    }
    if let Some((c1, c2)) = fit {
        out.lines.push(format!("fit n1 ~ {c1:.5} T log T, n2 ~ {c2:.5} T log T"));
    }
    out.check("unresolved", c.unresolved.is_empty(), format!("{} zeros", c.unresolved.len()));
    for u in c.unresolved.iter().take(20) {
        out.lines.push(format!("  {} {} at t = {:.6}: {}", u.kind, u.id, u.ordinate, u.reason));
    }
    out.check("bijection audit", audit.passed(), format!("{} violations", audit.violations.len()));
    Ok((report, out))
}

#[derive(Debug, Clone, Serialize)]
struct PolylineRow {
    curve: usize,
    family: &'static str,
    sigma: f64,
    t: f64,
}

#[derive(Debug, Clone, Serialize)]
struct CrossingRow {
    t: f64,
    zeta_index: Option<usize>,
    zeta_gamma: Option<f64>,
    difference: Option<f64>,
}

/// Plots the level curves in `region`, writes `xray.svg`, the polyline
/// CSV and the critical-line crossing audit.
pub fn xray(dir: &Path, out_dir: &Path, spec: &XrayPlotSpec) -> Result<Outcome> {
    let r = spec.region;
    let cache = load_or_empty(dir)?;
    let covered = cache.manifest.scanned_to >= r.t_hi;
    let prime: Vec<ZetaPrimeZero> = if covered || r.width() == 0.0 || r.height() == 0.0 {
        cache.prime.clone()
    } else {
        let lo = r.t_lo.max(CRITICAL_T_MIN);
        let (slo, shi) = (r.sigma_lo.max(PRIME_SIGMA.0), r.sigma_hi.min(PRIME_SIGMA.1));
        if r.t_hi > lo && shi > slo {
            zeta_prime_zeros_in(&Rect::new(slo, shi, lo, r.t_hi), &PrimeSearchConfig::default())?
        } else {
            Vec::new()
        }
    };
    let real = if cache.real.is_empty() && r.t_lo <= 0.0 && r.t_hi >= 0.0 {
        real_zeta_prime_zeros(REAL_HEAD_TERMS)?
    } else {
        cache.real.clone()
    };
    let plot = xray_plot(spec, &prime, &real)?;
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("xray.svg"), render_svg(&plot))?;
    let rows: Vec<PolylineRow> = plot
        .curves
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.points.iter().map(move |p| PolylineRow { curve: i, family: c.family.name(), sigma: p.re, t: p.im }))
        .collect();
    write_csv(&out_dir.join("xray_polylines.csv"), &rows)?;

    let mut out = Outcome::new();
    out.lines.push(format!("{} curves, {} zeros, {} failed seeds", plot.curves.len(), plot.zeros.len(), plot.failed_seeds));
    let audit_lo = r.t_lo.max(CRITICAL_T_MIN);
    if r.sigma_lo < 0.5 && 0.5 < r.sigma_hi && r.t_hi > audit_lo {
        let merge = 2.0 * spec.resolution;
        let crossings = critical_crossings(&plot, 1e-3);
        let zeta: Vec<f64> = if covered {
            cache.zeta.iter().map(|z| z.gamma).filter(|&g| g > audit_lo && g < r.t_hi).collect()
        } else {
            zeta_zeros_in(CRITICAL_T_MIN, r.t_hi, &LineScanConfig::default())?
                .into_iter()
                .map(|z| z.gamma)
                .filter(|&g| g > audit_lo)
                .collect()
        };
        let mut used = vec![false; zeta.len()];
        let mut rows = Vec::new();
        for &t in &crossings {
            let best = zeta
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
                .filter(|(_, g)| (*g - t).abs() <= merge);
            if let Some((i, _)) = best {
                used[i] = true;
            }
            rows.push(CrossingRow {
                t,
                zeta_index: best.map(|(i, _)| i),
                zeta_gamma: best.map(|(_, g)| *g),
                difference: best.map(|(_, g)| t - g),
            });
        }
        let worst = rows.iter().filter_map(|r| r.difference).fold(0.0, |a: f64, d| a.max(d.abs()));
        let unmatched = rows.iter().filter(|r| r.zeta_index.is_none()).count();
        let missing = used.iter().filter(|u| !**u).count();
        write_csv(&out_dir.join("xray_crossings.csv"), &rows)?;
        out.check(
            "crossing audit",
            unmatched == 0 && missing == 0,
            format!(
                "{} crossings for {} zeros, {unmatched} unmatched, {missing} missed, max |diff| {worst:.2e}",
                crossings.len(),
                zeta.len()
            ),
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerRow {
    pub name: String,
    pub computed: f64,
    pub target: String,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize)]
struct DominanceRow {
    t: f64,
    lower_bound: f64,
    f: f64,
    holds: bool,
}

/// Constants ledger, F positivity, gap integrals and the lower-bound
/// dominance sample.
pub fn zhang(dir: &Path, out_dir: &Path, t_max: f64) -> Result<Outcome> {
    check_tmax(t_max)?;
    if !ZeroCache::exists(dir) {
        return Err(Error::MissingCache(dir.to_path_buf()));
    }
    let cache = ZeroCache::load(dir)?;
    if cache.manifest.scanned_to < HEAD_HEIGHT {
        return Err(Error::IncompleteCache(format!(
            "zeta' zeros cached to t = {}, need {HEAD_HEIGHT}",
            cache.manifest.scanned_to
        )));
    }
    let mut out = Outcome::new();
    let ledger = constants_ledger(&cache.prime, &cache.real)?;
    let mut rows = Vec::new();
    let mut row = |out: &mut Outcome, name: &str, computed: f64, target: String, ok: bool| {
        out.check(name, ok, format!("computed {computed:.10}, target {target}"));
        rows.push(LedgerRow { name: name.into(), computed, target, verdict: if ok { "PASS" } else { "FAIL" }.into() });
    };
    let near = |x: f64, y: f64, tol: f64| (x - y).abs() <= tol;
    row(&mut out, "sum_real_head_30", ledger.sum_real_head_30, "0.2810417 ± 5e-7".into(), near(ledger.sum_real_head_30, 0.2810417, 5e-7));
    row(&mut out, "sum_complex_head", ledger.sum_complex_head, "0.0345840 ± 2e-5".into(), near(ledger.sum_complex_head, 0.0345840, 2e-5));
    row(&mut out, "sum_complex_tail_bound", ledger.sum_complex_tail_bound, "0.0051344 ± 1e-7".into(), near(ledger.sum_complex_tail_bound, 0.0051344, 1e-7));
    row(&mut out, "sum_real_tail_bound", ledger.sum_real_tail_bound, "0.0163920 ± 1e-7".into(), near(ledger.sum_real_tail_bound, 0.0163920, 1e-7));
    row(
        &mut out,
        "zpp_over_zp_at_0",
        ledger.zpp_over_zp_direct,
        format!("{:.12} ± 1e-10", ledger.zpp_over_zp_at_0),
        near(ledger.zpp_over_zp_direct, ledger.zpp_over_zp_at_0, 1e-10),
    );
    row(&mut out, "A", ledger.A, "informational".into(), true);
    row(&mut out, "totality", ledger.totality, "< -0.340479".into(), ledger.totality < -0.340479);
    write_csv(&out_dir.join("zhang_ledger.csv"), &rows)?;
    write_json(&out_dir.join("zhang_ledger.json"), &ledger)?;

    let gammas: Vec<f64> = cache.zeta.iter().map(|z| z.gamma).collect();
    let gaps = (1..=GAP_INTEGRALS).into_par_iter().map(|n| gap_integral(n, &gammas)).collect::<Result<Vec<_>>>()?;
    let worst_gap = gaps.iter().map(|g| (g.integral - PI).abs()).fold(0.0, f64::max);
    write_csv(&out_dir.join("gap_integrals.csv"), &gaps)?;
    out.check("gap integrals", worst_gap < 1e-6, format!("{} gaps, max |integral - pi| {worst_gap:.2e}", gaps.len()));

    let fmin = verify_F_positive(F_GRID_START, t_max, F_GRID_STEP)?;
    write_json(&out_dir.join("f_minimum.json"), &fmin)?;
    out.check("min F", fmin.value > 0.0, format!("min F = {:.6} at t = {:.4}", fmin.value, fmin.t));

    let mut rng = ChaCha8Rng::seed_from_u64(DOMINANCE_SEED);
    let ts: Vec<f64> = (0..DOMINANCE_SAMPLES).map(|_| rng.gen_range(F_GRID_START..t_max)).collect();
    let dom = ts
        .par_iter()
        .map(|&t| {
            let lb = F_lower_bound(t, &cache.prime)?;
            let f = f_value(t)?;
            Ok(DominanceRow { t, lower_bound: lb, f, holds: lb <= f })
        })
        .collect::<Result<Vec<_>>>()?;
    let fails = dom.iter().filter(|d| !d.holds).count();
    write_csv(&out_dir.join("dominance.csv"), &dom)?;
    out.check("lower bound dominance", fails == 0, format!("{fails} of {} samples violate", dom.len()));

    let tails = [100.0f64.min(t_max), t_max].map(|t| tail_term_checks(t, &cache.real));
    for t in tails {
        let t = t?;
        out.check(&format!("tail terms at t = {}", t.t), t.passed(), format!("lower block {:.3e} >= {:.3e}", t.lower_block, t.lower_block_bound));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub theta: Histogram,
    pub displacement: Histogram,
    /// Type-2 ζ′ zeros with θ > π/2.
    pub theta_outliers: Vec<usize>,
    pub medians_ordered: bool,
}

fn histogram_rows(h: &Histogram) -> (Vec<String>, Vec<Vec<String>>) {
    let header = ["bin", "lo", "hi", "type0", "type1", "type2"].map(String::from).to_vec();
    let rows = (0..h.edges.len() - 1)
        .map(|i| {
            let mut r = vec![i.to_string(), h.edges[i].to_string(), h.edges[i + 1].to_string()];
            r.extend((0u8..3).map(|k| h.counts_by_type[&k][i].to_string()));
            r
        })
        .collect();
    (header, rows)
}

/// Per-type histograms of θ and (β′ − 1/2) log γ′ for classified zeros
/// below `t_max`.
pub fn stats(dir: &Path, out_dir: &Path, t_max: f64) -> Result<(StatsReport, Outcome)> {
    check_tmax(t_max)?;
    if !ZeroCache::exists(dir) {
        return Err(Error::MissingCache(dir.to_path_buf()));
    }
    let cache = ZeroCache::load(dir)?;
    if cache.manifest.classified_to.map_or(true, |c| c < t_max) {
        return Err(Error::IncompleteCache(format!("zeros are not classified to {t_max}; run classify first")));
    }
    let zeros: Vec<&ZetaPrimeZero> = cache.prime.iter().filter(|z| z.gamma > CRITICAL_T_MIN && z.gamma < t_max).collect();
    let open = zeros.iter().filter(|z| z.zero_type == ZeroType::Unresolved || z.theta.is_none()).count();
    if open > 0 {
        return Err(Error::IncompleteClassification(open));
    }
    let proxies: Vec<_> = zeros
        .iter()
        .map(|z| {
            let g = crate::geometry::GeometryProxy {
                zero_id: z.id,
                kappa: z.kappa.unwrap_or(0.0),
                normal: [0.0, 0.0],
                theta: z.theta.unwrap_or(0.0),
                scaled_displacement: z.scaled_displacement.unwrap_or(0.0),
            };
            (g, z.zero_type)
        })
        .collect();
    let theta = proxy_histogram(&proxies, ProxyKind::Theta, THETA_BINS);
    let displacement = proxy_histogram(&proxies, ProxyKind::ScaledDisplacement, DISPLACEMENT_BINS);
    let theta_outliers: Vec<usize> =
        proxies.iter().filter(|(g, t)| *t == ZeroType::Two && g.theta > FRAC_PI_2).map(|(g, _)| g.zero_id).collect();
    let m = displacement.medians.clone();
    let medians_ordered = matches!((m[&2], m[&1], m[&0]), (Some(a), Some(b), Some(c)) if a < b && b < c);

    let (h, r) = histogram_rows(&theta);
    write_table(&out_dir.join("stats_theta.csv"), &h, &r)?;
    let (h, r) = histogram_rows(&displacement);
    write_table(&out_dir.join("stats_displacement.csv"), &h, &r)?;
    let report = StatsReport { theta, displacement, theta_outliers: theta_outliers.clone(), medians_ordered };
    write_json(&out_dir.join("stats.json"), &report)?;

    let mut out = Outcome::new();
    let first_two: Vec<usize> = zeros.iter().take(2).map(|z| z.id).collect();
    out.check(
        "theta outliers",
        theta_outliers == first_two,
        format!("type-2 zeros with theta > pi/2: {theta_outliers:?}"),
    );
    let fmt = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.4}"));
    out.check(
        "displacement medians",
        medians_ordered,
        format!("type 2 {} < type 1 {} < type 0 {}", fmt(m[&2]), fmt(m[&1]), fmt(m[&0])),
    );
    Ok((report, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestReport {
    pub accepted: usize,
    pub duplicates: usize,
}

/// Parses a "beta gamma" list ('#' starts a comment).
pub fn parse_zero_list(path: &Path) -> Result<Vec<(usize, f64, f64)>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { path: path.to_path_buf(), line: i + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected two numbers, found {}", fields.len())));
        }
        let num = |s: &str| s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| err(format!("not a number: {s:?}")));
        out.push((i + 1, num(fields[0])?, num(fields[1])?));
    }
    Ok(out)
}

/// Validates and merges an external ζ′ zero list into the cache. Nothing
/// is merged if any zero is rejected.
pub fn ingest(dir: &Path, path: &Path) -> Result<(IngestReport, Outcome)> {
    let list = parse_zero_list(path)?;
    let checked: Vec<std::result::Result<Complex64, String>> = list
        .par_iter()
        .map(|&(line, beta, gamma)| {
            if gamma.abs() > CRITICAL_T_MIN && beta <= 0.5 {
                return Err(format!("line {line}: {beta} {gamma}: beta <= 1/2 above t = 7"));
            }
            let z = Complex64::new(beta, gamma);
            match polish_zeta_prime_zero(z) {
                Ok(p) if (p - z).norm() < INGEST_MOVE_TOL => Ok(p),
                Ok(p) => Err(format!("line {line}: {beta} {gamma}: Newton moved it by {:.2e}", (p - z).norm())),
                Err(e) => Err(format!("line {line}: {beta} {gamma}: {e}")),
            }
        })
        .collect();
    let rejected: Vec<String> = checked.iter().filter_map(|r| r.as_ref().err().cloned()).collect();
    if !rejected.is_empty() {
        return Err(Error::Validation(rejected));
    }

    let mut cache = load_or_empty(dir)?;
    let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    let mut report = IngestReport { accepted: 0, duplicates: 0 };
    for p in checked.into_iter().flatten() {
        let p = if p.im < 0.0 { p.conj() } else { p };
        if has_prime(&cache.prime, p) {
            report.duplicates += 1;
        } else {
            cache.prime.push(ZetaPrimeZero::new(0, p.re, p.im));
            cache.prime_provenance.push(format!("ingested:{name}"));
            report.accepted += 1;
        }
    }
    if report.accepted > 0 || !ZeroCache::exists(dir) {
        cache.renumber_prime();
        cache.save(dir)?;
    }
    let mut out = Outcome::new();
    out.lines.push(format!("{} zeros accepted, {} duplicates", report.accepted, report.duplicates));
    Ok((report, out))
}

/// Writes cached ζ′ zeros in the ingest format.
pub fn export_zero_list(dir: &Path, path: &Path) -> Result<usize> {
    let cache = ZeroCache::load(dir)?;
    let mut s = String::from("# beta gamma\n");
    for z in &cache.prime {
        s.push_str(&format!("{:?} {:?}\n", z.beta, z.gamma));
    }
    fs::write(path, s)?;
    Ok(cache.prime.len())
}
