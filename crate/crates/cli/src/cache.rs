//! Content-addressed store for expensive artifacts (Scott modules), keyed by the tool version,
//! the artifact kind and a canonical description of the inputs.

use std::cell::Cell;
use std::path::{Path, PathBuf};

use modrep::{Field, Mat};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::report::TOOL_VERSION;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    key: String,
    kind: String,
    field_order: usize,
    rows: usize,
    cols: usize,
    /// One hex string per matrix, row-major, one byte per entry.
    matrices: Vec<String>,
    /// SHA-256 of the concatenated hex strings.
    digest: String,
}

pub struct Cache {
    dir: PathBuf,
    version: String,
    hits: Cell<usize>,
    misses: Cell<usize>,
}

fn digest(matrices: &[String]) -> String {
    let mut h = Sha256::new();
    for m in matrices {
        h.update(m.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Cache> {
        Cache::with_version(dir, TOOL_VERSION)
    }

    /// A cache whose keys are salted with `version`; a new version never sees old entries.
    pub fn with_version(dir: &Path, version: &str) -> std::io::Result<Cache> {
        std::fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
            version: version.to_string(),
            hits: Cell::new(0),
            misses: Cell::new(0),
        })
    }

    pub fn hits(&self) -> usize {
        self.hits.get()
    }

    pub fn misses(&self) -> usize {
        self.misses.get()
    }

    pub fn key(&self, kind: &str, inputs: &str) -> String {
        let mut h = Sha256::new();
        for part in [self.version.as_str(), kind, inputs] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// `count` square matrices stored under `key`; `None` when absent or corrupt.
    pub fn load(&self, key: &str, field: &Field, count: usize) -> Option<Vec<Mat>> {
        let path = self.path(key);
        let text = std::fs::read_to_string(&path).ok()?;
        match decode(&text, key, field, count) {
            Ok(m) => Some(m),
            Err(why) => {
                log::warn!("cache entry {} is corrupt ({why}); recomputing", path.display());
                None
            }
        }
    }

    pub fn store(&self, key: &str, kind: &str, field: &Field, mats: &[Mat]) -> std::io::Result<()> {
        let (rows, cols) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let matrices: Vec<String> = mats
            .iter()
            .map(|m| {
                let bytes: Vec<u8> = (0..m.rows()).flat_map(|i| m.row(i).iter().copied()).collect();
                hex::encode(bytes)
            })
            .collect();
        let entry = Entry {
            key: key.to_string(),
            kind: kind.to_string(),
            field_order: field.order(),
            rows,
            cols,
            digest: digest(&matrices),
            matrices,
        };
        let tmp = self.dir.join(format!("{key}.tmp"));
        std::fs::write(&tmp, serde_json::to_string(&entry).expect("entry serializes"))?;
        std::fs::rename(tmp, self.path(key))
    }

    /// The cached matrices, or the result of `compute` stored for next time.
    pub fn get_or_compute<E>(
        &self,
        key: &str,
        kind: &str,
        field: &Field,
        count: usize,
        compute: impl FnOnce() -> Result<Vec<Mat>, E>,
    ) -> Result<Vec<Mat>, E> {
        if let Some(m) = self.load(key, field, count) {
            self.hits.set(self.hits.get() + 1);
            log::info!("cache hit for {kind}");
            return Ok(m);
        }
        self.misses.set(self.misses.get() + 1);
        let m = compute()?;
        if let Err(e) = self.store(key, kind, field, &m) {
            log::warn!("could not write cache entry for {kind}: {e}");
        }
        Ok(m)
    }
}

fn decode(text: &str, key: &str, field: &Field, count: usize) -> Result<Vec<Mat>, String> {
    let e: Entry = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if e.key != key {
        return Err("key mismatch".into());
    }
    if e.field_order != field.order() || e.matrices.len() != count || e.rows != e.cols {
        return Err("shape mismatch".into());
    }
    if e.digest != digest(&e.matrices) {
        return Err("digest mismatch".into());
    }
    e.matrices
        .iter()
        .map(|h| {
            let bytes = hex::decode(h).map_err(|e| e.to_string())?;
            if bytes.len() != e.rows * e.cols || bytes.iter().any(|&b| b as usize >= field.order()) {
                return Err("bad matrix entries".to_string());
            }
            Ok(Mat::from_vec(field, e.rows, e.cols, bytes))
        })
        .collect()
}
