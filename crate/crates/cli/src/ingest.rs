//! Custom arithmetic functions from text tables.
//!
//! One value per line, line `k` holding `g(k)` as an integer or `p/q`.
//! Blank lines and lines starting with `#` are skipped.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use lclab_core::{ArithFn, Error, Rational};
use sha2::{Digest, Sha256};

pub fn parse_table(text: &str) -> Result<Vec<Rational>, Error> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = Rational::from_str(line).map_err(|e| Error::Parse {
            line: i + 1,
            msg: format!("{line:?}: {e}"),
        })?;
        values.push(v);
    }
    Ok(values)
}

/// `custom-` followed by a digest of the canonical values, so the same table
/// maps to the same cache entries however it is formatted.
pub fn content_label(values: &[Rational]) -> String {
    let mut hasher = Sha256::new();
    for v in values {
        hasher.update(v.to_string().as_bytes());
        hasher.update(b"\n");
    }
    let digest = hasher.finalize();
    format!("custom-{}", &hex::encode(digest)[..16])
}

pub fn custom_from_str(text: &str) -> Result<ArithFn, Error> {
    let values = parse_table(text)?;
    ArithFn::custom(content_label(&values), values)
}

pub fn ingest_custom_g(path: &Path) -> anyhow::Result<ArithFn> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    custom_from_str(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}
