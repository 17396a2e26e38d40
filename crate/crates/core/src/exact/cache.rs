//! On-disk cache of exact rows.
//!
//! One file per `(statistic, n)`, all integers little-endian:
//!
//! ```text
//! "PTCD" | version: u8 | n: u32 | statistic tag: u8 | entries: u32 |
//! entries × (byte length: u32 | magnitude bytes)
//! ```
//!
//! A row read back is re-validated (length and sum equal to `n!`), so a
//! corrupted file is reported instead of silently used.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;

use super::{distribution, CountDistribution};
use crate::{Error, Result, Statistic};

pub const CACHE_MAGIC: &[u8; 4] = b"PTCD";
pub const CACHE_VERSION: u8 = 1;

pub fn cache_path(dir: &Path, statistic: Statistic, n: usize) -> PathBuf {
    dir.join(format!("{}-{n}.ptcd", statistic.name()))
}

fn cache_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

fn encode(dist: &CountDistribution) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(CACHE_MAGIC);
    buf.push(CACHE_VERSION);
    buf.extend_from_slice(&(dist.n() as u32).to_le_bytes());
    buf.push(dist.statistic().tag());
    buf.extend_from_slice(&(dist.counts().len() as u32).to_le_bytes());
    for c in dist.counts() {
        let bytes = c.to_bytes_le();
        buf.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
        buf.extend_from_slice(&bytes);
    }
    buf
}

fn read_u32(r: &mut impl Read) -> io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u8(r: &mut impl Read) -> io::Result<u8> {
    let mut b = [0u8; 1];
    r.read_exact(&mut b)?;
    Ok(b[0])
}

fn decode(
    path: &Path,
    mut r: impl Read,
    statistic: Statistic,
    n: usize,
) -> Result<CountDistribution> {
    let err = |e: io::Error| cache_err(path, e);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(err)?;
    if &magic != CACHE_MAGIC {
        return Err(cache_err(path, "bad magic bytes"));
    }
    let version = read_u8(&mut r).map_err(err)?;
    if version != CACHE_VERSION {
        return Err(cache_err(path, format!("unsupported version {version}")));
    }
    let file_n = read_u32(&mut r).map_err(err)? as usize;
    let tag = read_u8(&mut r).map_err(err)?;
    if file_n != n || Statistic::from_tag(tag) != Some(statistic) {
        return Err(cache_err(path, "header does not match the requested row"));
    }
    let entries = read_u32(&mut r).map_err(err)? as usize;
    if entries != statistic.support_max(n) + 1 {
        return Err(cache_err(path, format!("unexpected entry count {entries}")));
    }
    let mut counts = Vec::with_capacity(entries);
    let mut bytes = Vec::new();
    for _ in 0..entries {
        let len = read_u32(&mut r).map_err(err)? as usize;
        bytes.resize(len, 0);
        r.read_exact(&mut bytes).map_err(err)?;
        counts.push(BigUint::from_bytes_le(&bytes));
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest).map_err(err)? != 0 {
        return Err(cache_err(path, "trailing bytes"));
    }
    CountDistribution::from_counts(statistic, n, counts).map_err(|e| cache_err(path, e))
}

/// Reads a cached row. `Ok(None)` when the file does not exist.
pub fn load_cached(
    dir: &Path,
    statistic: Statistic,
    n: usize,
) -> Result<Option<CountDistribution>> {
    let path = cache_path(dir, statistic, n);
    match fs::File::open(&path) {
        Ok(f) => decode(&path, io::BufReader::new(f), statistic, n).map(Some),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(cache_err(&path, e)),
    }
}

/// Writes a row atomically (temporary file, then rename).
pub fn store_cached(dir: &Path, dist: &CountDistribution) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| cache_err(dir, e))?;
    let path = cache_path(dir, dist.statistic(), dist.n());
    let tmp = path.with_extension(format!("ptcd.tmp{}", std::process::id()));
    let write = || -> io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&encode(dist))?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        cache_err(&path, e)
    })?;
    Ok(path)
}

/// Exact row, read from `dir` when cached and stored there otherwise.
/// Without a directory this is plain [`distribution`].
pub fn cached_distribution(
    statistic: Statistic,
    n: usize,
    dir: Option<&Path>,
) -> Result<CountDistribution> {
    let Some(dir) = dir else {
        return distribution(statistic, n);
    };
    if let Some(d) = load_cached(dir, statistic, n)? {
        return Ok(d);
    }
    let d = distribution(statistic, n)?;
    store_cached(dir, &d)?;
    Ok(d)
}
