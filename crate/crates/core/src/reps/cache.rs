//! On-disk cache of weight systems keyed by (g, lambda).
//!
//! Files are written to a temporary name in the cache directory and renamed
//! into place, so concurrent readers only ever see complete files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use super::{weight_multiplicities_with_limit, HighestWeight, WeightSystem, DEFAULT_WEIGHT_LIMIT};
use crate::error::{Error, Result};

pub const CACHE_DIR_ENV: &str = "AGCOH_CACHE_DIR";
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    genus: usize,
    lambda: Vec<i64>,
    dominant: Vec<(Vec<i64>, u64)>,
}

#[derive(Debug, Clone)]
pub struct WeightCache {
    dir: PathBuf,
    limit: usize,
}

impl WeightCache {
    pub fn new(dir: impl Into<PathBuf>) -> WeightCache {
        WeightCache { dir: dir.into(), limit: DEFAULT_WEIGHT_LIMIT }
    }

    /// Cache rooted at `$AGCOH_CACHE_DIR`, if set and nonempty.
    pub fn from_env() -> Option<WeightCache> {
        std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(WeightCache::new)
    }

    pub fn with_limit(mut self, limit: usize) -> WeightCache {
        self.limit = limit;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, hw: &HighestWeight) -> PathBuf {
        let lam: Vec<String> = hw.lambda().iter().map(i64::to_string).collect();
        self.dir.join(format!(
            "weights-v{CACHE_FORMAT_VERSION}-g{}-{}.json",
            hw.genus(),
            lam.join("_")
        ))
    }

    /// Cached weight system, if a readable file of the current format exists.
    pub fn load(&self, hw: &HighestWeight) -> Option<WeightSystem> {
        let text = fs::read_to_string(self.path_for(hw)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.format_version != CACHE_FORMAT_VERSION
            || file.genus != hw.genus()
            || file.lambda != hw.lambda()
        {
            return None;
        }
        Some(WeightSystem {
            genus: file.genus,
            lambda: file.lambda,
            dominant: file.dominant.into_iter().collect(),
        })
    }

    pub fn store(&self, ws: &WeightSystem) -> Result<()> {
        fs::create_dir_all(&self.dir)
            .map_err(|e| Error::Cache(format!("{}: {e}", self.dir.display())))?;
        let hw = HighestWeight::new(ws.lambda.clone())?;
        let file = CacheFile {
            format_version: CACHE_FORMAT_VERSION,
            genus: ws.genus,
            lambda: ws.lambda.clone(),
            dominant: ws.dominant.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        };
        let target = self.path_for(&hw);
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            target.file_name().unwrap().to_string_lossy(),
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&file)?.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &target)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            Error::Cache(format!("{}: {e}", target.display()))
        })
    }

    pub fn load_or_compute(&self, hw: &HighestWeight) -> Result<WeightSystem> {
        if let Some(ws) = self.load(hw) {
            return Ok(ws);
        }
        let ws = weight_multiplicities_with_limit(hw, self.limit)?;
        self.store(&ws)?;
        Ok(ws)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::weight_multiplicities;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = WeightCache::new(dir.path());
        let hw = HighestWeight::new(vec![3, 1, 1]).unwrap();
        assert!(cache.load(&hw).is_none());
        let a = cache.load_or_compute(&hw).unwrap();
        assert!(cache.path_for(&hw).exists());
        let b = cache.load(&hw).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, weight_multiplicities(&hw).unwrap());
    }

    #[test]
    fn stale_version_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = WeightCache::new(dir.path());
        let hw = HighestWeight::new(vec![1, 0]).unwrap();
        fs::write(
            cache.path_for(&hw),
            r#"{"format_version":0,"genus":2,"lambda":[1,0],"dominant":[[[1,0],7]]}"#,
        )
        .unwrap();
        assert!(cache.load(&hw).is_none());
        let ws = cache.load_or_compute(&hw).unwrap();
        assert_eq!(ws.multiplicity(&[1, 0]), 1);
    }
}
