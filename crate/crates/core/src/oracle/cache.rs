//! On-disk cache of structure constants.
//!
//! One JSON file per rank, `qh-constants-n<n>.json`:
//!
//! ```json
//! {
//!   "format": "lagquot-qh-constants",
//!   "version": "1",
//!   "n": "2",
//!   "basis": ["", "1", "2", "2,1"],
//!   "constants": [["1", "1", "2", "0", "2"], ...]
//! }
//! ```
//!
//! Each constant row is `(lambda, mu, nu, d, c)`: three basis labels in the
//! `basis` spelling, then `d` and `c`. Every integer is a decimal string. A
//! file whose format, version, rank or basis differs from the current build
//! is ignored and rewritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{basis_labels, build_qh_algebra, QHAlgebra, StructureConstant};
use crate::error::{Error, Result};

pub const CACHE_FORMAT: &str = "lagquot-qh-constants";
pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "LGQ_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: String,
    n: String,
    basis: Vec<String>,
    constants: Vec<[String; 5]>,
}

/// What [`load_or_build`] did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    /// Loaded from a valid cache file.
    Hit,
    /// No cache file existed; built and written.
    Built,
    /// The file existed but was stale or unreadable; rebuilt and rewritten.
    Rebuilt(String),
    /// No cache directory was given.
    Disabled,
}

/// `$LGQ_CACHE_DIR`, if set and nonempty.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

pub fn cache_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("qh-constants-n{n}.json"))
}

pub fn to_json(algebra: &QHAlgebra) -> String {
    let labels = basis_labels(algebra.n());
    let file = CacheFile {
        format: CACHE_FORMAT.into(),
        version: CACHE_VERSION.to_string(),
        n: algebra.n().to_string(),
        basis: labels.clone(),
        constants: algebra
            .constants()
            .map(|sc| {
                [
                    labels[sc.lambda].clone(),
                    labels[sc.mu].clone(),
                    labels[sc.nu].clone(),
                    sc.d.to_string(),
                    sc.c.to_string(),
                ]
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("cache file serializes")
}

/// Parses a cache file for rank `n`; the reason string explains a rejection.
pub fn from_json(text: &str, n: u32) -> std::result::Result<QHAlgebra, String> {
    let file: CacheFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if file.format != CACHE_FORMAT {
        return Err(format!("unknown format {:?}", file.format));
    }
    if file.version != CACHE_VERSION.to_string() {
        return Err(format!("version {} != {CACHE_VERSION}", file.version));
    }
    if file.n != n.to_string() {
        return Err(format!("rank {} != {n}", file.n));
    }
    let labels = basis_labels(n);
    if file.basis != labels {
        return Err("basis order differs".into());
    }
    let position = |s: &str| {
        labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| format!("unknown basis label {s:?}"))
    };
    let constants = file
        .constants
        .iter()
        .map(|[l, m, v, d, c]| {
            Ok(StructureConstant {
                lambda: position(l)?,
                mu: position(m)?,
                nu: position(v)?,
                d: d.parse().map_err(|_| format!("bad degree {d:?}"))?,
                c: c.parse::<BigInt>()
                    .map_err(|_| format!("bad constant {c:?}"))?,
            })
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    QHAlgebra::from_constants(n, constants).map_err(|e| e.to_string())
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_cache(algebra: &QHAlgebra, path: &Path) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(to_json(algebra).as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Cache {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    Ok(())
}

/// Loads the algebra for rank `n` from `dir`, or builds it and stores it
/// there. Without a directory the algebra is always built.
pub fn load_or_build(n: u32, dir: Option<&Path>) -> Result<(QHAlgebra, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((build_qh_algebra(n)?, CacheStatus::Disabled));
    };
    let path = cache_path(dir, n);
    let status = match fs::read_to_string(&path) {
        Ok(text) => match from_json(&text, n) {
            Ok(algebra) => return Ok((algebra, CacheStatus::Hit)),
            Err(reason) => CacheStatus::Rebuilt(reason),
        },
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheStatus::Built,
        Err(e) => CacheStatus::Rebuilt(e.to_string()),
    };
    let algebra = build_qh_algebra(n)?;
    write_cache(&algebra, &path)?;
    Ok((algebra, status))
}
