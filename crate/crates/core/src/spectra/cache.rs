//! Stage cache: `<root>/<q>_<N>_<order>/<stage>.json` plus a manifest of
//! content hashes, serialized through an exclusive lock file.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever a stage's output could change.
pub const ALGORITHM_VERSION: &str = "janet(divisibility-displacement,criteria I+II)/1;gb-extract/1;fglm(fraction-free)/1";

pub const DEFAULT_CACHE_DIR: &str = ".qes-cache";

pub fn algorithm_hash() -> String {
    hex::encode(Sha256::digest(ALGORITHM_VERSION.as_bytes()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub algorithm: String,
    pub stages: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct StageCache {
    root: PathBuf,
}

/// Held while touching the cache; released on drop.
struct Lock(File);

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = self.0.unlock();
    }
}

impl StageCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        StageCache { root: root.into() }
    }

    /// `QES_CACHE_DIR`, else `./.qes-cache`.
    pub fn from_env() -> Self {
        StageCache::new(std::env::var_os("QES_CACHE_DIR").map_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR), PathBuf::from))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn lock(&self) -> io::Result<Lock> {
        fs::create_dir_all(&self.root)?;
        let f = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.root.join(".lock"))?;
        f.lock()?;
        Ok(Lock(f))
    }

    fn manifest(dir: &Path) -> Option<Manifest> {
        let text = fs::read_to_string(dir.join("manifest.json")).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// A stored stage, if present, written by this algorithm version and
    /// matching its recorded hash.
    pub fn load<T: DeserializeOwned>(&self, key: &str, stage: &str) -> Option<T> {
        let _guard = self.lock().ok()?;
        let dir = self.root.join(key);
        let manifest = Self::manifest(&dir)?;
        if manifest.algorithm != algorithm_hash() {
            log::info!("cache {key}: algorithm changed, ignoring");
            return None;
        }
        let bytes = fs::read(dir.join(format!("{stage}.json"))).ok()?;
        if manifest.stages.get(stage)? != &hex::encode(Sha256::digest(&bytes)) {
            log::warn!("cache {key}/{stage}: hash mismatch, ignoring");
            return None;
        }
        serde_json::from_slice(&bytes).ok()
    }

    pub fn store<T: Serialize>(&self, key: &str, stage: &str, value: &T) -> io::Result<()> {
        let _guard = self.lock()?;
        let dir = self.root.join(key);
        fs::create_dir_all(&dir)?;
        let bytes = serde_json::to_vec(value).map_err(io::Error::other)?;
        let tmp = dir.join(format!("{stage}.json.tmp"));
        fs::write(&tmp, &bytes)?;
        fs::rename(&tmp, dir.join(format!("{stage}.json")))?;
        let mut manifest = Self::manifest(&dir)
            .filter(|m| m.algorithm == algorithm_hash())
            .unwrap_or_else(|| Manifest {
                algorithm: algorithm_hash(),
                stages: BTreeMap::new(),
            });
        manifest.stages.insert(stage.to_string(), hex::encode(Sha256::digest(&bytes)));
        fs::write(dir.join("manifest.json"), serde_json::to_vec_pretty(&manifest).map_err(io::Error::other)?)?;
        Ok(())
    }

    /// `(key, stages)` for every entry, sorted by key.
    pub fn list(&self) -> io::Result<Vec<(String, Vec<String>)>> {
        if !self.root.exists() {
            return Ok(Vec::new());
        }
        let _guard = self.lock()?;
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.root)? {
            let entry = entry?;
            if !entry.file_type()?.is_dir() {
                continue;
            }
            let key = entry.file_name().to_string_lossy().into_owned();
            let stages = Self::manifest(&entry.path())
                .map(|m| m.stages.into_keys().collect())
                .unwrap_or_default();
            out.push((key, stages));
        }
        out.sort();
        Ok(out)
    }

    /// Remove every entry; returns how many were removed.
    pub fn clear(&self) -> io::Result<usize> {
        if !self.root.exists() {
            return Ok(0);
        }
        let _guard = self.lock()?;
        let mut n = 0;
        for entry in fs::read_dir(&self.root)? {
            let entry = entry?;
            if entry.file_type()?.is_dir() {
                fs::remove_dir_all(entry.path())?;
                n += 1;
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_load_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = StageCache::new(dir.path());
        cache.store("2_3_degrevlex", "janet", &vec![1, 2, 3]).unwrap();
        assert_eq!(cache.load::<Vec<i32>>("2_3_degrevlex", "janet"), Some(vec![1, 2, 3]));
        assert_eq!(cache.load::<Vec<i32>>("2_3_degrevlex", "gb"), None);
        fs::write(dir.path().join("2_3_degrevlex/janet.json"), b"[9]").unwrap();
        assert_eq!(cache.load::<Vec<i32>>("2_3_degrevlex", "janet"), None);
        assert_eq!(cache.list().unwrap(), vec![("2_3_degrevlex".to_string(), vec!["janet".to_string()])]);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.list().unwrap().is_empty());
    }
}
