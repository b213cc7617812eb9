//! Line-delimited JSON zero caches.
//!
//! A cache directory holds `manifest.json` and one `.jsonl` file per zero
//! kind. Every line is one record with sorted keys, so files are diffable
//! and a load/save round trip reproduces them byte for byte.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::zerofinder::{RealZetaPrimeZero, ZetaPrimeZero, ZetaZero};

pub const SCHEMA_VERSION: u64 = 1;
pub const CACHE_ENV: &str = "ETA_XRAY_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = "eta-xray-cache";
pub const COMPUTED: &str = "computed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    Zeta,
    ZetaPrime,
    ZetaPrimeReal,
}

impl RecordKind {
    pub fn name(self) -> &'static str {
        match self {
            RecordKind::Zeta => "zeta",
            RecordKind::ZetaPrime => "zeta_prime",
            RecordKind::ZetaPrimeReal => "zeta_prime_real",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.jsonl", self.name())
    }

    fn tolerances(self) -> Value {
        match self {
            RecordKind::Zeta => json!({ "gamma_abs": 1e-11, "crossing_match": 1e-6 }),
            RecordKind::ZetaPrime => json!({ "residual": 1e-10, "dedup": 1e-8, "trace_residual": 1e-8 }),
            RecordKind::ZetaPrimeReal => json!({ "residual_rel": 1e-10 }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u64,
    /// Height up to which the ζ and ζ′ lists are complete.
    pub scanned_to: f64,
    pub real_count: usize,
    /// Height up to which types are assigned, if classified.
    pub classified_to: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCache {
    pub manifest: Manifest,
    pub zeta: Vec<ZetaZero>,
    pub prime: Vec<ZetaPrimeZero>,
    /// Parallel to `prime`.
    pub prime_provenance: Vec<String>,
    pub real: Vec<RealZetaPrimeZero>,
}

/// Cache directory: the explicit path, else `$ETA_XRAY_CACHE_DIR`, else
/// `./eta-xray-cache`.
pub fn cache_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

/// One record as a single JSON line with sorted keys.
pub fn record_line<T: Serialize>(kind: RecordKind, item: &T, provenance: &str) -> Result<String> {
    let mut map = match serde_json::to_value(item)? {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    map.insert("kind".into(), Value::from(kind.name()));
    map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    map.insert("tolerances".into(), kind.tolerances());
    map.insert("provenance".into(), Value::from(provenance));
    Ok(serde_json::to_string(&Value::Object(map))?)
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.to_path_buf(), line, msg: msg.into() }
}

/// Reads a `.jsonl` file of one kind into items and their provenance.
pub fn read_records<T: DeserializeOwned>(path: &Path, kind: RecordKind) -> Result<Vec<(T, String)>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(line).map_err(|e| parse_err(path, i + 1, e.to_string()))?;
        let found = v.get("schema_version").and_then(Value::as_u64);
        if found != Some(SCHEMA_VERSION) {
            return Err(parse_err(path, i + 1, format!("schema_version {found:?}, expected {SCHEMA_VERSION}")));
        }
        if v.get("kind").and_then(Value::as_str) != Some(kind.name()) {
            return Err(parse_err(path, i + 1, format!("expected kind {}", kind.name())));
        }
        let provenance = v.get("provenance").and_then(Value::as_str).unwrap_or(COMPUTED).to_string();
        let item = serde_json::from_value(v).map_err(|e| parse_err(path, i + 1, e.to_string()))?;
        out.push((item, provenance));
    }
    Ok(out)
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn lines<T: Serialize>(kind: RecordKind, items: &[T], provenance: impl Fn(usize) -> String) -> Result<String> {
    let mut s = String::new();
    for (i, item) in items.iter().enumerate() {
        s.push_str(&record_line(kind, item, &provenance(i))?);
        s.push('\n');
    }
    Ok(s)
}

impl ZeroCache {
    pub fn empty() -> Self {
        ZeroCache {
            manifest: Manifest { schema_version: SCHEMA_VERSION, scanned_to: 0.0, real_count: 0, classified_to: None },
            zeta: Vec::new(),
            prime: Vec::new(),
            prime_provenance: Vec::new(),
            real: Vec::new(),
        }
    }

    pub fn exists(dir: &Path) -> bool {
        dir.join("manifest.json").is_file()
    }

    pub fn load(dir: &Path) -> Result<ZeroCache> {
        let mpath = dir.join("manifest.json");
        if !mpath.is_file() {
            return Err(Error::MissingCache(dir.to_path_buf()));
        }
        let manifest: Manifest =
            serde_json::from_str(&fs::read_to_string(&mpath)?).map_err(|e| parse_err(&mpath, 1, e.to_string()))?;
        if manifest.schema_version != SCHEMA_VERSION {
            return Err(parse_err(&mpath, 1, format!("unsupported schema_version {}", manifest.schema_version)));
        }
        let zeta: Vec<ZetaZero> = read_records(&dir.join(RecordKind::Zeta.file_name()), RecordKind::Zeta)?
            .into_iter()
            .map(|r| r.0)
            .collect();
        let (prime, prime_provenance): (Vec<ZetaPrimeZero>, Vec<String>) =
            read_records(&dir.join(RecordKind::ZetaPrime.file_name()), RecordKind::ZetaPrime)?.into_iter().unzip();
        let real: Vec<RealZetaPrimeZero> =
            read_records(&dir.join(RecordKind::ZetaPrimeReal.file_name()), RecordKind::ZetaPrimeReal)?
                .into_iter()
                .map(|r| r.0)
                .collect();
        let cache = ZeroCache { manifest, zeta, prime, prime_provenance, real };
        cache.check_monotone(dir)?;
        Ok(cache)
    }

    fn check_monotone(&self, dir: &Path) -> Result<()> {
        let bad = |kind: RecordKind, i: usize| parse_err(&dir.join(kind.file_name()), i + 2, "ordinates not increasing");
        if let Some(i) = self.zeta.windows(2).position(|w| w[1].gamma <= w[0].gamma) {
            return Err(bad(RecordKind::Zeta, i));
        }
        if let Some(i) = self.prime.windows(2).position(|w| w[1].gamma < w[0].gamma) {
            return Err(bad(RecordKind::ZetaPrime, i));
        }
        if let Some(i) = self.real.windows(2).position(|w| w[1].value >= w[0].value) {
            return Err(bad(RecordKind::ZetaPrimeReal, i));
        }
        Ok(())
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let manifest = serde_json::to_string_pretty(&serde_json::to_value(&self.manifest)?)? + "\n";
        write_atomic(&dir.join(RecordKind::Zeta.file_name()), &lines(RecordKind::Zeta, &self.zeta, |_| COMPUTED.into())?)?;
        write_atomic(
            &dir.join(RecordKind::ZetaPrime.file_name()),
            &lines(RecordKind::ZetaPrime, &self.prime, |i| {
                self.prime_provenance.get(i).cloned().unwrap_or_else(|| COMPUTED.into())
            })?,
        )?;
        write_atomic(
            &dir.join(RecordKind::ZetaPrimeReal.file_name()),
            &lines(RecordKind::ZetaPrimeReal, &self.real, |_| COMPUTED.into())?,
        )?;
        write_atomic(&dir.join("manifest.json"), &manifest)
    }

    /// Re-sorts ζ′ zeros by ordinate, renumbers ids from 1 and drops any
    /// classification, which refers to ids.
    pub fn renumber_prime(&mut self) {
        let mut both: Vec<(ZetaPrimeZero, String)> =
            self.prime.drain(..).zip(self.prime_provenance.drain(..)).collect();
        both.sort_by(|a, b| a.0.gamma.total_cmp(&b.0.gamma));
        for (i, (z, _)) in both.iter_mut().enumerate() {
            *z = ZetaPrimeZero::new(i + 1, z.beta, z.gamma);
        }
        (self.prime, self.prime_provenance) = both.into_iter().unzip();
        self.clear_classification();
    }

    pub fn clear_classification(&mut self) {
        self.manifest.classified_to = None;
        for z in &mut self.zeta {
            z.zero_type = crate::zerofinder::ZeroType::Unresolved;
            z.terminal_zero_id = None;
            z.pair_partner_index = None;
        }
        for z in &mut self.prime {
            *z = ZetaPrimeZero::new(z.id, z.beta, z.gamma);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_keys_sorted() {
        let z = ZetaPrimeZero::new(1, 2.5, 23.25);
        let line = record_line(RecordKind::ZetaPrime, &z, COMPUTED).unwrap();
        let keys: Vec<String> = serde_json::from_str::<Map<String, Value>>(&line).unwrap().keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(line.find("\"beta\"").unwrap() < line.find("\"gamma\"").unwrap());
        assert!(line.contains("\"schema_version\":1"));
    }

    #[test]
    fn explicit_dir_wins() {
        assert_eq!(cache_dir(Some(Path::new("/x/y"))), PathBuf::from("/x/y"));
    }
}
