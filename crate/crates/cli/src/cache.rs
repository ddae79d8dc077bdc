//! On-disk result cache: one JSON file per key under a two-level hashed tree.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub payload: Value,
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Debug, Default, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: u64,
    pub bytes: u64,
    pub stale: u64,
}

#[derive(Debug, Default, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct GcReport {
    pub kept: u64,
    pub removed: u64,
}

pub struct Cache {
    root: PathBuf,
}

enum Probe {
    Fresh(CacheEntry),
    Stale(String),
}

fn probe(path: &Path) -> std::io::Result<Probe> {
    let bytes = fs::read(path)?;
    Ok(match serde_json::from_slice::<CacheEntry>(&bytes) {
        Err(e) => Probe::Stale(format!("unreadable entry ({e})")),
        Ok(entry) if entry.tool_version != TOOL_VERSION => {
            Probe::Stale(format!("entry written by version {}", entry.tool_version))
        }
        Ok(entry) => Probe::Fresh(entry),
    })
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        let digest = hex::encode(Sha256::digest(key.as_bytes()));
        self.root.join(&digest[..2]).join(&digest[2..4]).join(format!("{digest}.json"))
    }

    /// Payload stored under `key`; corrupt or outdated entries count as misses.
    pub fn get(&self, key: &str) -> Option<Value> {
        let path = self.path_for(key);
        match probe(&path) {
            Ok(Probe::Fresh(entry)) if entry.key == key => Some(entry.payload),
            Ok(Probe::Fresh(entry)) => {
                eprintln!("warning: cache entry {} holds key {:?}; recomputing", path.display(), entry.key);
                None
            }
            Ok(Probe::Stale(why)) => {
                eprintln!("warning: ignoring cache entry {}: {why}; recomputing", path.display());
                None
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
            Err(e) => {
                eprintln!("warning: cannot read cache entry {}: {e}", path.display());
                None
            }
        }
    }

    /// Write through a temporary file and rename, so readers never see a
    /// partial entry.
    pub fn put(&self, key: &str, payload: &Value) -> std::io::Result<()> {
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        let path = self.path_for(key);
        let dir = path.parent().expect("entry path has a parent");
        fs::create_dir_all(dir)?;
        let entry = CacheEntry {
            key: key.to_string(),
            payload: payload.clone(),
            tool_version: TOOL_VERSION.to_string(),
            created_at: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        };
        let tmp = dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut file = fs::File::create(&tmp)?;
        file.write_all(&serde_json::to_vec(&entry)?)?;
        file.sync_all()?;
        drop(file);
        fs::rename(&tmp, &path)
    }

    fn files(&self) -> Vec<PathBuf> {
        let mut out = Vec::new();
        let mut stack = vec![self.root.clone()];
        while let Some(dir) = stack.pop() {
            let Ok(rd) = fs::read_dir(&dir) else { continue };
            for e in rd.flatten() {
                let p = e.path();
                if p.is_dir() {
                    stack.push(p);
                } else {
                    out.push(p);
                }
            }
        }
        out.sort();
        out
    }

    pub fn stats(&self) -> CacheStats {
        let mut s = CacheStats::default();
        for p in self.files() {
            s.bytes += fs::metadata(&p).map(|m| m.len()).unwrap_or(0);
            match probe(&p) {
                Ok(Probe::Fresh(_)) if is_entry(&p) => s.entries += 1,
                _ => s.stale += 1,
            }
        }
        s
    }

    /// Delete corrupt, outdated and leftover temporary files.
    pub fn gc(&self) -> std::io::Result<GcReport> {
        let mut r = GcReport::default();
        for p in self.files() {
            match probe(&p) {
                Ok(Probe::Fresh(_)) if is_entry(&p) => r.kept += 1,
                _ => {
                    fs::remove_file(&p)?;
                    r.removed += 1;
                }
            }
        }
        Ok(r)
    }
}

fn is_entry(p: &Path) -> bool {
    p.extension().is_some_and(|e| e == "json")
}
