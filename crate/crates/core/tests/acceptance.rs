//! Acceptance criteria at T = 1000. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use eta_xray::classify::{BijectionAudit, TypeCensus};
use eta_xray::complexfn::zeta_jet;
use eta_xray::eta::{eta_jet, f_value};
use eta_xray::io::cache::ZeroCache;
use eta_xray::io::pipeline::{classify, scan};
use eta_xray::tracer::{branch_directions, trace_from_zeta_zero, trace_level_curve, Anchor, Termination, TraceConfig, ZeroCatalog};
use eta_xray::zerofinder::{ZeroType, ZetaPrimeZero};
use eta_xray::zhang::{constants_ledger, gap_integral, verify_F_positive, F_lower_bound};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const T: f64 = 1000.0;

struct Data {
    dir: PathBuf,
    cache: ZeroCache,
    census: TypeCensus,
    audit: BijectionAudit,
    elapsed: Duration,
}

fn build(root: &Path) -> Data {
    let dir = root.join("cache");
    let start = Instant::now();
    scan(&dir, T).expect("scan");
    let (report, _) = classify(&dir, &root.join("out"), T).expect("classify");
    let elapsed = start.elapsed();
    let cache = ZeroCache::load(&dir).expect("load");
    let census = report.census.clone().expect("classification has unresolved zeros");
    Data { dir, cache, census, audit: report.audit, elapsed }
}

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, n: u32, ok: bool, detail: String) {
        println!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed += 1;
        }
    }
}

fn in_range(g: f64) -> bool {
    g > 7.0 && g < T
}

fn c1_census(d: &Data, r: &mut Report) {
    let got = (d.census.n0p, d.census.n1, d.census.n2_pairs);
    let ok = got == (75, 281, 182) && d.elapsed < Duration::from_secs(30 * 60);
    r.line(1, ok, format!("type census {got:?}, expected (75, 281, 182); scan+classify {:.0?}", d.elapsed));
}

fn c2_bijection(d: &Data, r: &mut Report) {
    let zeros: Vec<_> = d.cache.zeta.iter().filter(|z| in_range(z.gamma)).collect();
    let typed = zeros.iter().filter(|z| matches!(z.zero_type, ZeroType::One | ZeroType::Two)).count();
    let audit = &d.audit;
    r.line(
        2,
        typed == zeros.len() && audit.passed(),
        format!("{typed}/{} Riemann zeros typed, {} audit violations", zeros.len(), audit.violations.len()),
    );
}

fn c3_early_types(d: &Data, r: &mut Report) {
    let first: Vec<usize> = d.cache.prime.iter().filter(|z| z.gamma > 7.0).take(8).filter_map(|z| z.zero_type.count()).collect();
    let type0 = |lo: f64, hi: f64| d.cache.prime.iter().any(|z| z.zero_type == ZeroType::Zero && z.gamma > lo && z.gamma < hi);
    let ok = first == [2, 2, 2, 2, 1, 2, 1, 2] && type0(110.0, 116.0) && type0(129.0, 135.0);
    r.line(3, ok, format!("first eight types {first:?}, type 0 in (110,116): {}, in (129,135): {}", type0(110.0, 116.0), type0(129.0, 135.0)));
}

fn c4_gap_integrals(d: &Data, r: &mut Report) {
    let start = Instant::now();
    let gammas: Vec<f64> = d.cache.zeta.iter().map(|z| z.gamma).collect();
    let worst = (1..=100)
        .map(|n| gap_integral(n, &gammas).map(|g| (g.integral - PI).abs()).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    let took = start.elapsed();
    r.line(4, worst < 1e-6 && took < Duration::from_secs(300), format!("max |integral - pi| = {worst:.2e} over n = 1..100 in {took:.1?}"));
}

fn c5_positivity(d: &Data, r: &mut Report) {
    let fmin = verify_F_positive(7.5, T, 0.01);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let violations = (0..200)
        .filter(|_| {
            let t = rng.gen_range(7.5..T);
            !matches!((F_lower_bound(t, &d.cache.prime), f_value(t)), (Ok(lb), Ok(f)) if lb <= f)
        })
        .count();
    match fmin {
        Ok(m) => r.line(
            5,
            m.value > 0.0 && violations == 0,
            format!("min F = {:.6} at t = {:.4}; lower bound violated at {violations}/200 points", m.value, m.t),
        ),
        Err(e) => r.line(5, false, format!("min F failed: {e}")),
    }
}

fn c6_ledger(d: &Data, r: &mut Report) {
    let l = match constants_ledger(&d.cache.prime, &d.cache.real) {
        Ok(l) => l,
        Err(e) => return r.line(6, false, format!("ledger failed: {e}")),
    };
    let checks = [
        ("real sum", (l.sum_real_head_30 - 0.2810417).abs() <= 5e-7),
        ("complex head", (l.sum_complex_head - 0.0345840).abs() <= 2e-5),
        ("complex tail", (l.sum_complex_tail_bound - 0.0051344).abs() <= 1e-7),
        ("real tail", (l.sum_real_tail_bound - 0.0163920).abs() <= 1e-7),
        ("totality", l.totality < -0.340479),
        ("zeta''/zeta'(0)", (l.zpp_over_zp_direct - l.zpp_over_zp_at_0).abs() <= 1e-10),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    r.line(
        6,
        failed.is_empty(),
        format!(
            "real {:.7}, head {:.7}, tails {:.7} {:.7}, totality {:.7}, ratio diff {:.1e}; failing: {failed:?}",
            l.sum_real_head_30,
            l.sum_complex_head,
            l.sum_complex_tail_bound,
            l.sum_real_tail_bound,
            l.totality,
            (l.zpp_over_zp_direct - l.zpp_over_zp_at_0).abs()
        ),
    );
}

fn c7_parity(d: &Data, r: &mut Report) {
    let zeros: Vec<_> = d.cache.zeta.iter().filter(|z| z.gamma < T).collect();
    let bad = zeros
        .iter()
        .filter(|z| {
            let im = eta_jet(Complex64::new(0.5, z.gamma)).map(|j| j.eta.im).unwrap_or(0.0);
            (im < 0.0) != (z.index % 2 == 1) || im == 0.0
        })
        .count();
    let contiguous = zeros.iter().enumerate().all(|(i, z)| z.index == i + 1);
    r.line(7, bad == 0 && contiguous, format!("{} zeros, {bad} with wrong sign of Im eta", zeros.len()));
}

fn c8_geometry(d: &Data, r: &mut Report) {
    let zeros: Vec<&ZetaPrimeZero> = d.cache.prime.iter().filter(|z| in_range(z.gamma)).collect();
    let type2: Vec<_> = zeros.iter().filter(|z| z.zero_type == ZeroType::Two).collect();
    let outliers: Vec<usize> = type2.iter().filter(|z| z.theta.is_some_and(|t| t > FRAC_PI_2)).map(|z| z.id).collect();
    let first_two: Vec<usize> = zeros.iter().take(2).map(|z| z.id).collect();
    let median = |ty: ZeroType| {
        let mut v: Vec<f64> = zeros.iter().filter(|z| z.zero_type == ty).filter_map(|z| z.scaled_displacement).collect();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        (n > 0).then(|| if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
    };
    let (m2, m1, m0) = (median(ZeroType::Two), median(ZeroType::One), median(ZeroType::Zero));
    let ordered = matches!((m2, m1, m0), (Some(a), Some(b), Some(c)) if a < b && b < c);
    r.line(
        8,
        outliers == first_two && ordered,
        format!(
            "{} type-2 zeros, theta > pi/2 at ids {outliers:?}; medians {:.3} < {:.3} < {:.3}",
            type2.len(),
            m2.unwrap_or(f64::NAN),
            m1.unwrap_or(f64::NAN),
            m0.unwrap_or(f64::NAN)
        ),
    );
}

fn c9_counting(d: &Data, r: &mut Report) {
    let (e1, e3) = (d.census.residuals["n1_plus_2n2"], d.census.residuals["n2_minus_n0"]);
    r.line(9, e1 <= 10.0 && e3 <= 10.0, format!("|n1 + 2 n2 - main| = {e1:.3}, |n2 - n0 - main| = {e3:.3}"));
}

fn c10_properties(d: &Data, r: &mut Report) {
    let mut notes = Vec::new();

    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/zeta_jets.csv");
    let mut worst = 0.0f64;
    let mut rows = 0;
    for rec in csv::Reader::from_path(path).unwrap().records() {
        let v: Vec<f64> = rec.unwrap().iter().map(|x| x.parse().unwrap()).collect();
        let j = zeta_jet(Complex64::new(v[0], v[1]), 3).unwrap();
        for k in 0..4 {
            let want = Complex64::new(v[2 + 2 * k], v[3 + 2 * k]);
            worst = worst.max((j.values[k] - want).norm() / want.norm().max(1.0));
        }
        rows += 1;
    }
    notes.push((format!("oracle {rows} points {worst:.1e}"), rows == 500 && worst <= 1e-10));

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut fd_worst, mut conj_worst) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let s = Complex64::new(rng.gen_range(-2.0..4.0), rng.gen_range(10.0..1000.0));
        let h = 1e-4;
        let j = zeta_jet(s, 3).unwrap();
        for k in 0..3 {
            let fd = (zeta_jet(s + h, 3).unwrap().values[k] - zeta_jet(s - h, 3).unwrap().values[k]) / (2.0 * h);
            fd_worst = fd_worst.max((fd - j.values[k + 1]).norm() / j.values[k + 1].norm().max(1.0));
        }
        let c = zeta_jet(s.conj(), 3).unwrap();
        for k in 0..4 {
            conj_worst = conj_worst.max((c.values[k] - j.values[k].conj()).norm() / j.values[k].norm().max(1.0));
        }
    }
    notes.push((format!("finite differences {fd_worst:.1e}"), fd_worst < 1e-6));
    notes.push((format!("conjugation {conj_worst:.1e}"), conj_worst < 1e-12));

    let copy = d.dir.with_file_name("copy");
    let same = ZeroCache::load(&d.dir).and_then(|c| c.save(&copy)).is_ok()
        && ["manifest.json", "zeta.jsonl", "zeta_prime.jsonl", "zeta_prime_real.jsonl"]
            .iter()
            .all(|f| std::fs::read(d.dir.join(f)).ok() == std::fs::read(copy.join(f)).ok());
    notes.push(("cache round trip".into(), same));

    let catalog = ZeroCatalog::new(d.cache.zeta.iter().map(|z| z.gamma).collect(), &d.cache.prime);
    let cfg = TraceConfig::for_height(T);
    let mut retrace_worst = 0.0f64;
    for z in d.cache.zeta.iter().filter(|z| z.gamma < 200.0) {
        let back = trace_from_zeta_zero(z.index, z.gamma, &cfg, &catalog).ok().and_then(|c| match c.termination {
            Termination::ReachedEtaZero { id } => {
                let p = d.cache.prime.iter().find(|p| p.id == id)?;
                branch_directions(p)
                    .ok()?
                    .iter()
                    .filter_map(|&(dir, sign)| {
                        match trace_level_curve(p.point(), dir, sign, Anchor::ZetaPrimeZero(id), &cfg, &catalog).ok()?.termination {
                            Termination::CrossedCriticalLine { gamma } => Some((gamma - z.gamma).abs()),
                            _ => None,
                        }
                    })
                    .reduce(f64::min)
            }
            _ => None,
        });
        retrace_worst = retrace_worst.max(back.unwrap_or(f64::INFINITY));
    }
    notes.push((format!("retrace {retrace_worst:.1e}"), retrace_worst < 1e-4));

    let ok = notes.iter().all(|n| n.1);
    let text: Vec<String> = notes.iter().map(|(s, ok)| format!("{s} {}", if *ok { "ok" } else { "FAILED" })).collect();
    r.line(10, ok, text.join(", "));
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let data = build(tmp.path());
    let mut r = Report { failed: 0 };
    c1_census(&data, &mut r);
    c2_bijection(&data, &mut r);
    c3_early_types(&data, &mut r);
    c4_gap_integrals(&data, &mut r);
    c5_positivity(&data, &mut r);
    c6_ledger(&data, &mut r);
    c7_parity(&data, &mut r);
    c8_geometry(&data, &mut r);
    c9_counting(&data, &mut r);
    c10_properties(&data, &mut r);
    println!("acceptance: {} of 10 criteria passed", 10 - r.failed);
    if r.failed > 0 {
        std::process::exit(1);
    }
}
