//! Types of ζ′ zeros and Riemann zeros, type-2 pairing, and the counting
//! identities relating them.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::CRITICAL_T_MIN;
use crate::tracer::{
    branch_directions, trace_from_zeta_zero, trace_level_curve, Anchor, Edge, Termination, TraceConfig, ZeroCatalog,
};
use crate::zerofinder::{ZeroType, ZetaPrimeZero, ZetaZero};

/// Floor used when a branch leaves through t = 7. Level curves with
/// Im η ≠ 0 only meet the real axis at poles.
const LOW_FLOOR: f64 = -0.5;

/// Outcome of tracing one branch leaving a ζ′ zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BranchOutcome {
    Crossed(f64),
    NoCrossing,
    Unresolved(String),
}

fn branch_outcome(term: Result<Termination>) -> BranchOutcome {
    match term {
        Ok(Termination::CrossedCriticalLine { gamma }) => BranchOutcome::Crossed(gamma),
        // |η| grows monotonically along a branch leaving a zero, and for
        // σ ≥ 10 the phase of η is monotone in t, so a branch leaving through
        // the right edge never returns.
        Ok(Termination::BoxExit { edge: Edge::Right }) => BranchOutcome::NoCrossing,
        Ok(Termination::NearPole) => BranchOutcome::NoCrossing,
        Ok(other) => BranchOutcome::Unresolved(format!("{other:?}")),
        Err(e) => BranchOutcome::Unresolved(e.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeClassification {
    pub id: usize,
    pub zero_type: ZeroType,
    pub crossings: Vec<f64>,
    pub branches: [BranchOutcome; 2],
}

impl PrimeClassification {
    pub fn reason(&self) -> Option<String> {
        let reasons: Vec<String> = self
            .branches
            .iter()
            .filter_map(|b| match b {
                BranchOutcome::Unresolved(r) => Some(r.clone()),
                _ => None,
            })
            .collect();
        (!reasons.is_empty()).then(|| reasons.join("; "))
    }
}

/// Traces both Re η = 0 branches out of `z` and counts critical-line
/// crossings above t = 7.
pub fn classify_zeta_prime_zero(z: &ZetaPrimeZero, cfg: &TraceConfig, catalog: &ZeroCatalog) -> PrimeClassification {
    let dirs = match branch_directions(z) {
        Ok(d) => d,
        Err(e) => {
            let r = BranchOutcome::Unresolved(e.to_string());
            return PrimeClassification { id: z.id, zero_type: ZeroType::Unresolved, crossings: vec![], branches: [r.clone(), r] };
        }
    };
    let branches = dirs.map(|(d, sign)| {
        let trace = |cfg: &TraceConfig| {
            trace_level_curve(z.point(), d, sign, Anchor::ZetaPrimeZero(z.id), cfg, catalog).map(|c| c.termination)
        };
        let mut term = trace(cfg);
        if let Ok(Termination::BoxExit { edge: Edge::Bottom }) = term {
            // Below t = 7 a branch can only end at a pole or come back up.
            let mut low = *cfg;
            low.bbox.t_lo = LOW_FLOOR;
            term = trace(&low);
        }
        branch_outcome(term)
    });
    let mut crossings: Vec<f64> = branches
        .iter()
        .filter_map(|b| match b {
            BranchOutcome::Crossed(g) => Some(*g),
            _ => None,
        })
        .collect();
    crossings.sort_by(f64::total_cmp);
    let resolved = branches.iter().all(|b| !matches!(b, BranchOutcome::Unresolved(_)));
    let zero_type = if resolved { ZeroType::from_count(crossings.len()) } else { ZeroType::Unresolved };
    PrimeClassification { id: z.id, zero_type, crossings, branches }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaClassification {
    pub index: usize,
    pub terminal_zero_id: Option<usize>,
    pub reason: Option<String>,
}

/// Traces rightward from 1/2 + iγ to the ζ′ zero where the curve ends.
pub fn classify_zeta_zero(z: &ZetaZero, cfg: &TraceConfig, catalog: &ZeroCatalog) -> ZetaClassification {
    let (terminal, reason) = match trace_from_zeta_zero(z.index, z.gamma, cfg, catalog) {
        Ok(c) => match c.termination {
            Termination::ReachedEtaZero { id } => (Some(id), None),
            other => (None, Some(format!("non-termination {other:?}"))),
        },
        Err(e) => (None, Some(e.to_string())),
    };
    ZetaClassification { index: z.index, terminal_zero_id: terminal, reason }
}

/// The two crossings of a type-2 zero, sorted.
pub fn pair_type2(z: &ZetaPrimeZero) -> Result<(f64, f64)> {
    if z.zero_type != ZeroType::Two || z.crossings.len() != 2 {
        return Err(Error::TypeMismatch(format!("zero {} has type {:?}", z.id, z.zero_type)));
    }
    let (a, b) = (z.crossings[0].min(z.crossings[1]), z.crossings[0].max(z.crossings[1]));
    Ok((a, b))
}

/// (γ₊ − γ₋)·log γ₊.
pub fn gap_statistic(pair: (f64, f64)) -> f64 {
    (pair.1 - pair.0) * pair.1.ln()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypePair {
    pub zero_id: usize,
    pub gamma_minus: f64,
    pub gamma_plus: f64,
    pub index_minus: usize,
    pub index_plus: usize,
    pub gap_statistic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnresolvedZero {
    pub kind: String,
    pub id: usize,
    pub ordinate: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub t_max: f64,
    pub zeta: Vec<ZetaZero>,
    pub prime: Vec<ZetaPrimeZero>,
    pub pairs: Vec<TypePair>,
    /// Unresolved zeros with ordinate in (7, t_max).
    pub unresolved: Vec<UnresolvedZero>,
}

/// Classifies every cached ζ′ zero with 7 < γ′ < t_max + 10 and every
/// Riemann zero with 7 < γ < t_max, then links the two directions.
///
/// `coverage` is the height up to which both zero lists are complete; it
/// must reach the top of `cfg.bbox`.
pub fn classify_all(
    zeta: &[ZetaZero],
    prime: &[ZetaPrimeZero],
    coverage: f64,
    t_max: f64,
    cfg: &TraceConfig,
) -> Result<Classification> {
    let top = cfg.bbox.t_hi;
    if coverage < top {
        return Err(Error::IncompleteCache(format!(
            "classification to {t_max} needs zero lists complete to {top}, have {coverage}"
        )));
    }
    let catalog = ZeroCatalog::new(zeta.iter().map(|z| z.gamma).collect(), prime);
    let prime_top = t_max + 10.0;

    let prime_results: Vec<PrimeClassification> = prime
        .par_iter()
        .filter(|z| z.gamma > CRITICAL_T_MIN && z.gamma < prime_top)
        .map(|z| classify_zeta_prime_zero(z, cfg, &catalog))
        .collect();
    let zeta_results: Vec<ZetaClassification> = zeta
        .par_iter()
        .filter(|z| z.gamma > CRITICAL_T_MIN && z.gamma < t_max)
        .map(|z| classify_zeta_zero(z, cfg, &catalog))
        .collect();

    let by_id: HashMap<usize, &PrimeClassification> = prime_results.iter().map(|c| (c.id, c)).collect();
    let mut unresolved = Vec::new();
    let prime: Vec<ZetaPrimeZero> = prime
        .iter()
        .map(|z| {
            let mut z = z.clone();
            if let Some(c) = by_id.get(&z.id) {
                z.zero_type = c.zero_type;
                z.crossings = c.crossings.clone();
                if let (Some(reason), true) = (c.reason(), z.gamma < t_max) {
                    unresolved.push(UnresolvedZero { kind: "zeta_prime".into(), id: z.id, ordinate: z.gamma, reason });
                }
            }
            z
        })
        .collect();
    let prime_by_id: HashMap<usize, &ZetaPrimeZero> = prime.iter().map(|z| (z.id, z)).collect();
    let index_of = |g: f64| catalog.match_gamma(g, 1e-6);

    let mut pairs = Vec::new();
    let mut partner: HashMap<usize, usize> = HashMap::new();
    for z in prime.iter().filter(|z| z.zero_type == ZeroType::Two) {
        let (gm, gp) = pair_type2(z)?;
        let (Some(im), Some(ip)) = (index_of(gm), index_of(gp)) else {
            return Err(Error::UnmatchedCrossing(gm));
        };
        partner.insert(im, ip);
        partner.insert(ip, im);
        pairs.push(TypePair {
            zero_id: z.id,
            gamma_minus: gm,
            gamma_plus: gp,
            index_minus: im,
            index_plus: ip,
            gap_statistic: gap_statistic((gm, gp)),
        });
    }

    let zc: HashMap<usize, &ZetaClassification> = zeta_results.iter().map(|c| (c.index, c)).collect();
    let zeta: Vec<ZetaZero> = zeta
        .iter()
        .map(|z| {
            let mut z = z.clone();
            if let Some(c) = zc.get(&z.index) {
                z.terminal_zero_id = c.terminal_zero_id;
                let terminal_type = c.terminal_zero_id.and_then(|id| prime_by_id.get(&id)).map(|p| p.zero_type);
                z.zero_type = match terminal_type {
                    Some(t @ (ZeroType::One | ZeroType::Two)) => t,
                    _ => ZeroType::Unresolved,
                };
                if z.zero_type == ZeroType::Two {
                    z.pair_partner_index = partner.get(&z.index).copied();
                }
                if z.zero_type == ZeroType::Unresolved {
                    let reason = c.reason.clone().unwrap_or_else(|| match terminal_type {
                        Some(ZeroType::Zero) => "terminal ζ′ zero has type 0".into(),
                        _ => "terminal ζ′ zero unresolved".into(),
                    });
                    unresolved.push(UnresolvedZero { kind: "zeta".into(), id: z.index, ordinate: z.gamma, reason });
                }
            }
            z
        })
        .collect();

    unresolved.sort_by(|a, b| a.ordinate.total_cmp(&b.ordinate));
    Ok(Classification { t_max, zeta, prime, pairs, unresolved })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeCensus {
    #[serde(rename = "T")]
    pub t: f64,
    /// ζ′ zeros with 7 < γ′ < T by type.
    pub n0p: usize,
    pub n1: usize,
    pub n2_pairs: usize,
    pub riemann_total: usize,
    /// Riemann zeros with 7 < γ < T of type 1.
    pub riemann_type1: usize,
    /// Type-2 pairs with γ₊ < T.
    pub riemann_type2_pairs: usize,
    pub unresolved: usize,
    pub residuals: BTreeMap<String, f64>,
    pub main_terms: BTreeMap<String, f64>,
}

pub fn main_terms(t: f64) -> BTreeMap<String, f64> {
    let u = t / (2.0 * PI);
    BTreeMap::from([
        ("n1_plus_2n2".to_string(), u * (t / (2.0 * PI)).ln() - u),
        ("n0_plus_n1_plus_n2".to_string(), u * (t / (4.0 * PI)).ln() - u),
        ("n2_minus_n0".to_string(), u * 2f64.ln()),
        ("n1_plus_2n0".to_string(), u * (t / (8.0 * PI)).ln() - u),
    ])
}

pub fn census(c: &Classification, t: f64) -> Result<TypeCensus> {
    let in_range = |g: f64| g > CRITICAL_T_MIN && g < t;
    let open = c.unresolved.iter().filter(|u| in_range(u.ordinate)).count();
    if open > 0 {
        return Err(Error::IncompleteClassification(open));
    }
    let count = |ty: ZeroType| c.prime.iter().filter(|z| in_range(z.gamma) && z.zero_type == ty).count();
    let (n0p, n1, n2_pairs) = (count(ZeroType::Zero), count(ZeroType::One), count(ZeroType::Two));
    let riemann_total = c.zeta.iter().filter(|z| in_range(z.gamma)).count();
    let riemann_type1 = c.zeta.iter().filter(|z| in_range(z.gamma) && z.zero_type == ZeroType::One).count();
    let riemann_type2_pairs = c.pairs.iter().filter(|p| p.gamma_plus < t).count();

    let mains = main_terms(t);
    let observed = [
        ("n1_plus_2n2", (n1 + 2 * n2_pairs) as f64),
        ("n0_plus_n1_plus_n2", (n0p + n1 + n2_pairs) as f64),
        ("n2_minus_n0", n2_pairs as f64 - n0p as f64),
        ("n1_plus_2n0", (n1 + 2 * n0p) as f64),
    ];
    let residuals = observed.iter().map(|(k, v)| (k.to_string(), (v - mains[*k]).abs())).collect();
    Ok(TypeCensus {
        t,
        n0p,
        n1,
        n2_pairs,
        riemann_total,
        riemann_type1,
        riemann_type2_pairs,
        unresolved: 0,
        residuals,
        main_terms: mains,
    })
}

/// Least-squares fit of n1 ≈ c1·T log T and n2 ≈ c2·T log T through the
/// origin.
pub fn conjecture_fit(censuses: &[TypeCensus]) -> Result<(f64, f64)> {
    if censuses.len() < 3 {
        return Err(Error::Domain("conjecture fit needs at least three censuses".into()));
    }
    let x: Vec<f64> = censuses.iter().map(|c| c.t * c.t.ln()).collect();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let fit = |ys: Vec<f64>| x.iter().zip(&ys).map(|(a, b)| a * b).sum::<f64>() / sxx;
    Ok((
        fit(censuses.iter().map(|c| c.n1 as f64).collect()),
        fit(censuses.iter().map(|c| c.n2_pairs as f64).collect()),
    ))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BijectionAudit {
    pub type1_injective: bool,
    pub type2_two_to_one: bool,
    pub type0_empty_preimage: bool,
    pub crossings_consistent: bool,
    pub violations: Vec<String>,
}

impl BijectionAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the Riemann-zero → ζ′-zero map against the crossing lists, for
/// Riemann zeros with 7 < γ < t.
pub fn bijection_audit(c: &Classification, t: f64) -> BijectionAudit {
    let mut pre: BTreeMap<usize, Vec<&ZetaZero>> = BTreeMap::new();
    for z in c.zeta.iter().filter(|z| z.gamma > CRITICAL_T_MIN && z.gamma < t) {
        if let Some(id) = z.terminal_zero_id {
            pre.entry(id).or_default().push(z);
        }
    }
    let mut v = Vec::new();
    let (mut inj, mut two, mut empty, mut cons) = (true, true, true, true);
    for p in &c.prime {
        let images = pre.get(&p.id).map(Vec::as_slice).unwrap_or(&[]);
        let upper = p.crossings.iter().all(|&g| g < t);
        match p.zero_type {
            ZeroType::Zero if !images.is_empty() => {
                empty = false;
                v.push(format!("type-0 zero {} has {} preimages", p.id, images.len()));
            }
            ZeroType::One if images.len() > 1 || (upper && p.crossings.len() == 1 && images.len() != 1) => {
                inj = false;
                v.push(format!("type-1 zero {} has {} preimages", p.id, images.len()));
            }
            ZeroType::Two if images.len() > 2 || (upper && images.len() != 2) => {
                two = false;
                v.push(format!("type-2 zero {} has {} preimages", p.id, images.len()));
            }
            _ => {}
        }
        for z in images {
            if !p.crossings.iter().any(|g| (g - z.gamma).abs() <= 1e-6) {
                cons = false;
                v.push(format!("zero {} ends at {} which does not list its crossing", z.index, p.id));
            }
        }
    }
    BijectionAudit {
        type1_injective: inj,
        type2_two_to_one: two,
        type0_empty_preimage: empty,
        crossings_consistent: cons,
        violations: v,
    }
}
