//! On-disk triangle cache.
//!
//! One JSON file per `(g, h, N)` holding the integer-scaled rows and a
//! SHA-256 checksum of everything else in the file. A request for `N` is
//! served from the smallest cached `N' >= N` by truncation. Unreadable,
//! tampered or outdated entries are reported and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use lclab_core::polyfam::ScaledRow;
use lclab_core::{build_triangle, ArithFn, HFn, Triangle};
use log::{debug, warn};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub scale: String,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    pub schema: u32,
    pub g: String,
    pub h: HFn,
    pub n_max: usize,
    pub column_cap: Option<usize>,
    pub scale_kind: Option<HFn>,
    pub rows: Vec<RowRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    #[serde(flatten)]
    pub payload: Payload,
    pub checksum: String,
}

impl Payload {
    pub fn from_triangle(tri: &Triangle) -> Self {
        Payload {
            schema: CACHE_SCHEMA,
            g: tri.g().label().to_string(),
            h: tri.h(),
            n_max: tri.n_max(),
            column_cap: tri.column_cap(),
            scale_kind: tri.scale_kind(),
            rows: tri
                .rows()
                .iter()
                .map(|r| RowRecord {
                    scale: r.scale().to_string(),
                    coeffs: r.coeffs().iter().map(BigInt::to_string).collect(),
                })
                .collect(),
        }
    }

    fn checksum(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("payload serializes");
        hex::encode(Sha256::digest(bytes))
    }

    /// Rebuilds the triangle; `g` must carry the stored label.
    pub fn to_triangle(&self, g: &ArithFn) -> anyhow::Result<Triangle> {
        if self.g != g.label() {
            bail!("entry is for g = {}, not {}", self.g, g.label());
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let scale: BigInt = r.scale.parse()?;
                let coeffs = r
                    .coeffs
                    .iter()
                    .map(|c| c.parse::<BigInt>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ScaledRow::new(scale, coeffs)?)
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let tri = Triangle::from_parts(g.clone(), self.h, self.column_cap, self.scale_kind, rows)?;
        if tri.n_max() != self.n_max {
            bail!(
                "entry holds {} rows, header says N = {}",
                tri.n_max(),
                self.n_max
            );
        }
        Ok(tri)
    }
}

impl CacheEntry {
    pub fn new(tri: &Triangle) -> Self {
        let payload = Payload::from_triangle(tri);
        let checksum = payload.checksum();
        CacheEntry { payload, checksum }
    }

    /// Parses and verifies an entry.
    pub fn decode(text: &str) -> anyhow::Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).context("not JSON")?;
        let schema = value.get("schema").and_then(serde_json::Value::as_u64);
        if schema != Some(u64::from(CACHE_SCHEMA)) {
            bail!("schema {schema:?}, expected {CACHE_SCHEMA}");
        }
        let entry: CacheEntry = serde_json::from_value(value).context("malformed entry")?;
        if entry.payload.checksum() != entry.checksum {
            bail!("checksum mismatch");
        }
        Ok(entry)
    }
}

/// Outcome of a cache lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup {
    Hit { stored_n: usize },
    Miss,
}

pub struct Cache {
    dir: PathBuf,
}

fn file_key(label: &str) -> String {
    label
        .chars()
        .map(|c| match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '_' | '-' | '=' | '~' => c,
            _ => '_',
        })
        .collect()
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> anyhow::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)
            .with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn prefix(g: &ArithFn, h: HFn) -> String {
        format!("{}__{}__", file_key(g.label()), h.label())
    }

    pub fn path_for(&self, g: &ArithFn, h: HFn, n: usize) -> PathBuf {
        self.dir.join(format!("{}{n}.json", Self::prefix(g, h)))
    }

    /// Cached sizes for `(g, h)`, ascending.
    fn stored_sizes(&self, g: &ArithFn, h: HFn) -> Vec<usize> {
        let prefix = Self::prefix(g, h);
        let mut sizes: Vec<usize> = fs::read_dir(&self.dir)
            .into_iter()
            .flatten()
            .flatten()
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                name.strip_prefix(&prefix)?
                    .strip_suffix(".json")?
                    .parse()
                    .ok()
            })
            .collect();
        sizes.sort_unstable();
        sizes
    }

    /// The first rows `0..=n` of the smallest usable entry with `N' >= n`.
    pub fn load(&self, g: &ArithFn, h: HFn, n: usize) -> Option<(Triangle, usize)> {
        for stored in self.stored_sizes(g, h).into_iter().filter(|&s| s >= n) {
            let path = self.path_for(g, h, stored);
            let result = fs::read_to_string(&path)
                .map_err(anyhow::Error::from)
                .and_then(|text| CacheEntry::decode(&text))
                .and_then(|entry| {
                    if entry.payload.h != h || entry.payload.column_cap.is_some() {
                        bail!("entry does not hold a full triangle for h = {}", h.label());
                    }
                    entry.payload.to_triangle(g)
                })
                .and_then(|tri| Ok(tri.truncate(n)?));
            match result {
                Ok(tri) => {
                    debug!("cache hit {} for N = {n}", path.display());
                    return Some((tri, stored));
                }
                Err(e) => warn!(
                    "ignoring cache entry {}: {e:#}; recomputing",
                    path.display()
                ),
            }
        }
        None
    }

    /// Writes the entry through a temporary file and a rename.
    pub fn store(&self, tri: &Triangle) -> anyhow::Result<PathBuf> {
        let path = self.path_for(tri.g(), tri.h(), tri.n_max());
        let bytes = serde_json::to_vec(&CacheEntry::new(tri))?;
        let tmp = self.dir.join(format!(
            ".{}.{}.tmp",
            path.file_name().and_then(|s| s.to_str()).unwrap_or("entry"),
            std::process::id()
        ));
        {
            let mut f = fs::File::create(&tmp)
                .with_context(|| format!("cannot write {}", tmp.display()))?;
            f.write_all(&bytes)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }

    /// Loads `(g, h, n)` or builds and stores it.
    pub fn get_or_build(
        &self,
        g: &ArithFn,
        h: HFn,
        n: usize,
    ) -> anyhow::Result<(Triangle, Lookup)> {
        if let Some((tri, stored_n)) = self.load(g, h, n) {
            return Ok((tri, Lookup::Hit { stored_n }));
        }
        let tri = build_triangle(g, h, n)?;
        if let Err(e) = self.store(&tri) {
            warn!("could not store cache entry: {e:#}");
        }
        Ok((tri, Lookup::Miss))
    }
}
