//! Agreement with independently computed high-precision values.

use std::collections::HashMap;
use std::path::PathBuf;

use eta_xray::complexfn::{constants, digamma, log_gamma, trigamma, zeta_jet};
use eta_xray::eta::eta_jet;
use eta_xray::zerofinder::{
    polish_zeta_prime_zero, real_zeta_prime_zeros, zeta_prime_zeros_in, zeta_zeros_in, LineScanConfig,
    PrimeSearchConfig, Rect,
};
use num_complex::Complex64;

fn table(name: &str) -> Vec<HashMap<String, f64>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    let mut r = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            header.iter().zip(rec.iter()).filter_map(|(h, v)| v.parse().ok().map(|x| (h.clone(), x))).collect()
        })
        .collect()
}

fn c(row: &HashMap<String, f64>, re: &str, im: &str) -> Complex64 {
    Complex64::new(row[re], row[im])
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn zeta_jets_match_oracle_at_500_points() {
    let rows = table("zeta_jets.csv");
    assert_eq!(rows.len(), 500);
    let mut worst = 0.0f64;
    for row in &rows {
        let s = Complex64::new(row["sigma"], row["t"]);
        let j = zeta_jet(s, 3).unwrap();
        for k in 0..4 {
            let want = c(row, &format!("z{k}_re"), &format!("z{k}_im"));
            let err = (j.values[k] - want).norm() / want.norm().max(1.0);
            worst = worst.max(err);
            assert!(err <= 1e-10, "ζ^({k})({s}) = {} vs {want}", j.values[k]);
        }
    }
    println!("worst scaled error {worst:e}");
}

#[test]
fn log_gamma_and_polygammas_match_oracle() {
    for row in table("log_gamma.csv") {
        let s = Complex64::new(row["re"], row["im"]);
        assert!(close(log_gamma(s).unwrap(), c(&row, "lg_re", "lg_im"), 1e-12), "log Γ({s})");
        assert!(close(digamma(s).unwrap(), c(&row, "psi_re", "psi_im"), 1e-12), "ψ({s})");
        assert!(close(trigamma(s).unwrap(), c(&row, "psi1_re", "psi1_im"), 1e-12), "ψ′({s})");
    }
}

#[test]
fn constants_match_oracle() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/constants.csv");
    let text = std::fs::read_to_string(path).unwrap();
    let v: HashMap<&str, f64> =
        text.lines().skip(1).filter_map(|l| l.split_once(',')).map(|(k, x)| (k, x.parse().unwrap())).collect();
    let k = constants();
    assert!((k.euler_c - v["euler"]).abs() < 1e-15);
    assert!((k.stieltjes_c1 - v["stieltjes1"]).abs() < 1e-15);
    let z0 = zeta_jet(Complex64::new(0.0, 0.0), 2).unwrap();
    assert!(((z0.values[2] / z0.values[1]).re - v["zpp_over_zp_at_0"]).abs() < 1e-10);
}

#[test]
fn real_zeta_prime_zeros_match_oracle() {
    let ours = real_zeta_prime_zeros(30).unwrap();
    let want = table("real_zeta_prime_zeros.csv");
    assert_eq!(ours.len(), want.len());
    for (z, w) in ours.iter().zip(&want) {
        assert_eq!(z.n as f64, w["n"]);
        assert!((z.value - w["value"]).abs() < 1e-10, "ρ_{}′ = {} vs {}", z.n, z.value, w["value"]);
    }
}

#[test]
fn riemann_zeros_match_oracle_to_1030() {
    let ours = zeta_zeros_in(7.0, 1030.0, &LineScanConfig::default()).unwrap();
    let want = table("riemann_zeros.csv");
    assert_eq!(ours.len(), want.len());
    for (z, w) in ours.iter().zip(&want) {
        assert_eq!(z.index as f64, w["index"]);
        assert!((z.gamma - w["gamma"]).abs() < 1e-9, "γ_{} = {} vs {}", z.index, z.gamma, w["gamma"]);
    }
    assert_eq!(ours.iter().filter(|z| z.gamma < 1000.0).count(), 649);
}

#[test]
fn first_zeta_prime_zeros_match_oracle() {
    let ours = zeta_prime_zeros_in(&Rect::new(0.5, 3.0, 7.0, 45.0), &PrimeSearchConfig::default()).unwrap();
    let want = table("zeta_prime_zeros_low.csv");
    assert_eq!(ours.len(), want.len());
    for (z, w) in ours.iter().zip(&want) {
        assert!((z.point() - Complex64::new(w["beta"], w["gamma"])).norm() < 1e-10);
        let p = polish_zeta_prime_zero(z.point()).unwrap();
        assert!((p - z.point()).norm() < 1e-12);
    }
}

#[test]
fn riemann_zeros_are_eta_zeros_with_alternating_sign() {
    for (i, w) in table("riemann_zeros.csv").iter().take(200).enumerate() {
        let e = eta_jet(Complex64::new(0.5, w["gamma"])).unwrap().eta;
        assert!(e.re.abs() < 1e-8 * e.im.abs());
        assert_eq!(e.im < 0.0, i % 2 == 0, "sign of Im η at γ_{}", i + 1);
    }
}
