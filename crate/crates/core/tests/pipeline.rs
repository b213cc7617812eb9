//! Commands run against temporary caches.

use std::fs;
use std::path::Path;

use eta_xray::io::cache::ZeroCache;
use eta_xray::io::pipeline::{classify, export_zero_list, ingest, scan, stats, xray};
use eta_xray::io::xray::XrayPlotSpec;
use eta_xray::zerofinder::{Rect, ZeroType};
use eta_xray::Error;

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

#[test]
fn scan_is_idempotent_and_extends() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("cache");
    scan(&dir, 50.0).unwrap();
    let first = snapshot(&dir);
    scan(&dir, 50.0).unwrap();
    assert_eq!(first, snapshot(&dir));

    let (cache, _) = scan(&dir, 80.0).unwrap();
    let fresh = tmp.path().join("fresh");
    let (direct, _) = scan(&fresh, 80.0).unwrap();
    assert_eq!(cache.zeta, direct.zeta);
    assert_eq!(cache.prime.len(), direct.prime.len());
    for (a, b) in cache.prime.iter().zip(&direct.prime) {
        assert_eq!(a.id, b.id);
        assert!((a.point() - b.point()).norm() < 1e-10);
    }
    assert_eq!(cache.zeta.len(), 21);
    assert_eq!(cache.real.len(), 30);
}

#[test]
fn scan_rejects_low_height() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(matches!(scan(tmp.path(), 5.0), Err(Error::Domain(_))));
    assert!(!ZeroCache::exists(tmp.path()));
}

#[test]
fn classify_needs_a_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let r = classify(&tmp.path().join("none"), tmp.path(), 100.0);
    assert!(matches!(r, Err(Error::MissingCache(_))));
}

#[test]
fn classify_and_stats_at_low_height() {
    let tmp = tempfile::tempdir().unwrap();
    let (dir, out) = (tmp.path().join("cache"), tmp.path().join("out"));
    scan(&dir, 60.0).unwrap();
    let (report, outcome) = classify(&dir, &out, 200.0).unwrap();
    assert!(outcome.verified, "{:?}", outcome.lines);
    assert_eq!(report.unresolved, 0);
    let census = report.census.unwrap();
    assert_eq!(census.n1 + 2 * census.n2_pairs, census.riemann_total);
    let cache = ZeroCache::load(&dir).unwrap();
    assert_eq!(cache.manifest.classified_to, Some(200.0));
    let types: Vec<ZeroType> = cache.prime.iter().take(8).map(|z| z.zero_type).collect();
    use ZeroType::*;
    assert_eq!(types, vec![Two, Two, Two, Two, One, Two, One, Two]);

    let header = fs::read_to_string(out.join("pairs.csv")).unwrap();
    assert!(header.starts_with("zero_id,gamma_minus,gamma_plus,index_minus,index_plus,gap_statistic\r\n"));
    assert!(fs::read_to_string(out.join("zeta_prime_types.csv")).unwrap().starts_with("id,beta,gamma,type,"));

    let (_, first) = stats(&dir, &out, 200.0).unwrap();
    let a = fs::read(out.join("stats_theta.csv")).unwrap();
    let (_, second) = stats(&dir, &out, 200.0).unwrap();
    assert_eq!(a, fs::read(out.join("stats_theta.csv")).unwrap());
    assert_eq!(first, second);
    assert!(matches!(stats(&dir, &out, 300.0), Err(Error::IncompleteCache(_))));
}

#[test]
fn export_then_ingest_is_a_no_op() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("cache");
    scan(&dir, 60.0).unwrap();
    let before = snapshot(&dir);
    let list = tmp.path().join("zeros.txt");
    assert_eq!(export_zero_list(&dir, &list).unwrap(), 7);
    let (r, _) = ingest(&dir, &list).unwrap();
    assert_eq!((r.accepted, r.duplicates), (0, 7));
    assert_eq!(before, snapshot(&dir));
}

#[test]
fn ingest_merges_with_provenance() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("cache");
    scan(&dir, 40.0).unwrap();
    let list = tmp.path().join("extra.txt");
    fs::write(&list, "# external\n1.2864968222690477 31.708250083115909\n2.3075700637226316 38.489983173078936  # next\n\n1.3827636057116746 42.29096455459673\n").unwrap();
    let (r, _) = ingest(&dir, &list).unwrap();
    assert_eq!((r.accepted, r.duplicates), (1, 2));
    let cache = ZeroCache::load(&dir).unwrap();
    let ids: Vec<usize> = cache.prime.iter().map(|z| z.id).collect();
    assert_eq!(ids, (1..=cache.prime.len()).collect::<Vec<_>>());
    let last = cache.prime.len() - 1;
    assert_eq!(cache.prime_provenance[last], "ingested:extra.txt");
    assert!((cache.prime[last].gamma - 42.290964554596729819).abs() < 1e-10);
}

#[test]
fn ingest_rejects_invalid_zeros() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("cache");
    let list = tmp.path().join("bad.txt");
    fs::write(&list, "0.4 23.3\n").unwrap();
    match ingest(&dir, &list) {
        Err(Error::Validation(v)) => assert_eq!(v.len(), 1),
        other => panic!("expected validation error, got {other:?}"),
    }
    fs::write(&list, "2.46 23.3\n").unwrap();
    assert!(matches!(ingest(&dir, &list), Err(Error::Validation(_))));
    fs::write(&list, "# ok\n2.46\n").unwrap();
    assert!(matches!(ingest(&dir, &list), Err(Error::Parse { line: 2, .. })));
    assert!(!ZeroCache::exists(&dir));
}

#[test]
fn xray_crossings_match_riemann_zeros() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let spec = XrayPlotSpec { region: Rect::new(-2.0, 4.0, 0.0, 80.0), zeta_only: false, resolution: 0.05 };
    let o = xray(&tmp.path().join("cache"), &out, &spec).unwrap();
    assert!(o.verified, "{:?}", o.lines);
    let svg = fs::read_to_string(out.join("xray.svg")).unwrap();
    assert!(svg.contains("-//W3C//DTD SVG 1.1//EN"));
    for color in ["#d90000", "#6cd900", "#00d9d9", "#6c00d9"] {
        assert!(svg.contains(color), "{color}");
    }
    let rows = fs::read_to_string(out.join("xray_crossings.csv")).unwrap();
    assert_eq!(rows.lines().count(), 1 + 21);
    assert!(fs::read_to_string(out.join("xray_polylines.csv")).unwrap().starts_with("curve,family,sigma,t\r\n"));

    let spec = XrayPlotSpec { zeta_only: true, ..spec };
    xray(&tmp.path().join("cache"), &out, &spec).unwrap();
    let svg = fs::read_to_string(out.join("xray.svg")).unwrap();
    assert!(!svg.contains("#d90000") && svg.contains("#6cd900"));
}

#[test]
fn xray_empty_and_reversed_regions() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let spec = XrayPlotSpec { region: Rect::new(1.0, 1.0, 20.0, 30.0), zeta_only: false, resolution: 0.05 };
    xray(tmp.path(), &out, &spec).unwrap();
    let svg = fs::read_to_string(out.join("xray.svg")).unwrap();
    assert!(svg.trim_end().ends_with("</svg>") && !svg.contains("<path"));
    let spec = XrayPlotSpec { region: Rect::new(2.0, 1.0, 20.0, 30.0), ..spec };
    assert!(matches!(xray(tmp.path(), &out, &spec), Err(Error::Region(_))));
}
