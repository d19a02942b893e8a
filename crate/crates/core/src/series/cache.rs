//! Persistent cache for expensive series expansions.
//!
//! One file per (kind, params) key. The format is deliberately plain text so
//! a cached expansion can be inspected or diffed by hand: a magic+version
//! line, the key line, a length line, then one decimal coefficient per line.
//! Writers go through a temporary file in the same directory followed by an
//! atomic rename, so a concurrent reader never observes a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::IntSeries;

const MAGIC: &str = "hookdist-series-cache";
pub const FORMAT_VERSION: u32 = 1;

/// Identifies one cached expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheKey {
    kind: String,
    params: Vec<(String, u64)>,
}

impl CacheKey {
    pub fn new(kind: &str, params: &[(&str, u64)]) -> Self {
        CacheKey {
            kind: kind.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    fn describe(&self) -> String {
        let mut s = self.kind.clone();
        for (k, v) in &self.params {
            s.push(' ');
            s.push_str(k);
            s.push('=');
            s.push_str(&v.to_string());
        }
        s
    }

    fn file_name(&self) -> String {
        let mut s = self.kind.clone();
        for (k, v) in &self.params {
            s.push('-');
            s.push_str(k);
            s.push_str(&v.to_string());
        }
        s.push_str(".txt");
        s
    }

    pub fn path_in(&self, dir: &Path) -> PathBuf {
        dir.join(self.file_name())
    }
}

/// Writes `series` under `key`, creating the directory if needed.
pub fn cache_store(dir: &Path, key: &CacheKey, series: &IntSeries) -> Result<()> {
    fs::create_dir_all(dir)?;
    let final_path = key.path_in(dir);
    let tmp_path = dir.join(format!(".{}.tmp{}", key.file_name(), std::process::id()));

    let mut buf = String::new();
    buf.push_str(&format!("{MAGIC} v{FORMAT_VERSION}\n"));
    buf.push_str(&key.describe());
    buf.push('\n');
    buf.push_str(&format!("{}\n", series.coeffs().len()));
    for c in series.coeffs() {
        buf.push_str(&c.to_string());
        buf.push('\n');
    }

    let mut f = fs::File::create(&tmp_path)?;
    f.write_all(buf.as_bytes())?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp_path, &final_path)?;
    Ok(())
}

/// Loads the series stored under `key`. A missing file is a miss (`Ok(None)`);
/// a present file that fails validation is a hard corruption error.
pub fn cache_load(dir: &Path, key: &CacheKey) -> Result<Option<IntSeries>> {
    let path = key.path_in(dir);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let corrupt = |reason: &str| Error::CacheCorrupt {
        path: path.display().to_string(),
        reason: reason.to_string(),
    };

    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| corrupt("empty file"))?;
    let expected = format!("{MAGIC} v{FORMAT_VERSION}");
    if header != expected {
        return Err(corrupt(&format!("bad header `{header}`, expected `{expected}`")));
    }
    let key_line = lines.next().ok_or_else(|| corrupt("missing key line"))?;
    if key_line != key.describe() {
        return Err(corrupt(&format!(
            "key mismatch: file has `{}`, lookup is `{}`",
            key_line,
            key.describe()
        )));
    }
    let len: usize = lines
        .next()
        .ok_or_else(|| corrupt("missing length line"))?
        .parse()
        .map_err(|_| corrupt("unparseable length"))?;
    if len == 0 {
        return Err(corrupt("zero-length series"));
    }
    let mut coeffs = Vec::with_capacity(len);
    for _ in 0..len {
        let line = lines.next().ok_or_else(|| corrupt("truncated coefficient list"))?;
        let c = BigInt::from_str(line).map_err(|_| corrupt("unparseable coefficient"))?;
        coeffs.push(c);
    }
    Ok(Some(IntSeries::new(coeffs)?))
}

/// Cache-through helper: `dir = None` disables caching entirely.
pub fn load_or_compute<F>(dir: Option<&Path>, key: &CacheKey, compute: F) -> Result<IntSeries>
where
    F: FnOnce() -> IntSeries,
{
    let Some(dir) = dir else {
        return Ok(compute());
    };
    if let Some(hit) = cache_load(dir, key)? {
        return Ok(hit);
    }
    let series = compute();
    cache_store(dir, key, &series)?;
    Ok(series)
}
