//! Content-addressed on-disk cache for expensive exact results.
//!
//! Each entry is `<hash>.json` (the payload) plus `<hash>.manifest.json`
//! (kind, parameters, library version). The hash covers all three, so the
//! directory can be deleted at any time.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::Result;

pub const CACHE_ENV: &str = "MACDYSON_CACHE_DIR";
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$MACDYSON_CACHE_DIR`, else `$XDG_CACHE_HOME/macdyson`, else
    /// `~/.cache/macdyson`.
    pub fn from_env() -> Option<Self> {
        if let Some(d) = std::env::var_os(CACHE_ENV) {
            return Some(Cache::new(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Cache::new(PathBuf::from(d).join("macdyson")));
        }
        std::env::var_os("HOME").map(|h| Cache::new(PathBuf::from(h).join(".cache").join("macdyson")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(kind: &str, params: &serde_json::Value) -> String {
        let mut h = Sha256::new();
        h.update(kind.as_bytes());
        h.update([0]);
        h.update(params.to_string().as_bytes());
        h.update([0]);
        h.update(VERSION.as_bytes());
        hex::encode(h.finalize())
    }

    fn paths(&self, key: &str) -> (PathBuf, PathBuf) {
        (self.dir.join(format!("{key}.json")), self.dir.join(format!("{key}.manifest.json")))
    }

    /// Cached value, if present and readable. Corrupt entries count as misses.
    pub fn get<T: DeserializeOwned>(&self, kind: &str, params: &serde_json::Value) -> Option<T> {
        let (data, _) = self.paths(&Self::key(kind, params));
        let bytes = fs::read(data).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    pub fn put<T: Serialize>(&self, kind: &str, params: &serde_json::Value, value: &T) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = Self::key(kind, params);
        let (data, manifest) = self.paths(&key);
        let m = json!({"kind": kind, "params": params, "version": VERSION, "key": key});
        write_atomic(&manifest, &serde_json::to_vec_pretty(&m)?)?;
        write_atomic(&data, &serde_json::to_vec(value)?)?;
        Ok(())
    }

    /// Returns the cached value or computes and stores it. Write failures are
    /// ignored so a read-only cache never blocks a computation.
    pub fn get_or_compute<T, F>(&self, kind: &str, params: &serde_json::Value, f: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.get(kind, params) {
            return Ok(v);
        }
        let v = f()?;
        let _ = self.put(kind, params, &v);
        Ok(v)
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// `cache.get_or_compute` when a cache is given, plain `f()` otherwise.
pub fn cached<T, F>(cache: Option<&Cache>, kind: &str, params: &serde_json::Value, f: F) -> Result<T>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T>,
{
    match cache {
        Some(c) => c.get_or_compute(kind, params, f),
        None => f(),
    }
}
