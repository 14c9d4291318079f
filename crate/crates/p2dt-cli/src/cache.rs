//! On-disk cache of enumerated D(P): one JSON file per `b`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use p2dt::sigma::{enumerate_d, TableRow};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    b: i64,
    rows: Vec<TableRow>,
}

pub fn cache_path(dir: &Path, b: i64) -> PathBuf {
    dir.join(format!("b{b}.json"))
}

/// Rows stored for `b`, or `None` if missing, unreadable or from another schema.
pub fn load(dir: &Path, b: i64) -> Option<Vec<TableRow>> {
    let text = fs::read_to_string(cache_path(dir, b)).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    (file.schema_version == SCHEMA_VERSION && file.b == b).then_some(file.rows)
}

pub fn store(dir: &Path, b: i64, rows: &[TableRow]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let file = CacheFile {
        schema_version: SCHEMA_VERSION,
        b,
        rows: rows.to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&file).map_err(io::Error::other)?;
    text.push('\n');
    // write then rename so a partial file is never read back
    let tmp = dir.join(format!(".b{b}.json.tmp"));
    fs::write(&tmp, text)?;
    fs::rename(tmp, cache_path(dir, b))
}

#[derive(Debug)]
pub enum RowsError {
    Compute(p2dt::Error),
    Io(io::Error),
}

/// Rows for `b`, read from the cache when possible and written back after a cold run.
pub fn rows_for(
    b: i64,
    a_floor: Option<i64>,
    dir: Option<&Path>,
) -> Result<Vec<TableRow>, RowsError> {
    if let Some(dir) = dir {
        if let Some(rows) = load(dir, b) {
            return Ok(rows);
        }
    }
    let rows = enumerate_d(b, a_floor).map_err(RowsError::Compute)?;
    if let Some(dir) = dir {
        store(dir, b, &rows).map_err(RowsError::Io)?;
    }
    Ok(rows)
}

/// `(b, row count)` for each valid cache file, sorted by `b` descending.
pub fn list(dir: &Path) -> io::Result<Vec<(i64, usize)>> {
    let mut out = Vec::new();
    if !dir.exists() {
        return Ok(out);
    }
    for entry in fs::read_dir(dir)? {
        let name = entry?.file_name();
        let name = name.to_string_lossy();
        let Some(b) = name.strip_prefix('b').and_then(|s| s.strip_suffix(".json")) else {
            continue;
        };
        if let Ok(b) = b.parse::<i64>() {
            if let Some(rows) = load(dir, b) {
                out.push((b, rows.len()));
            }
        }
    }
    out.sort_by_key(|&(b, _)| std::cmp::Reverse(b));
    Ok(out)
}

/// Removes all cache files; returns how many were deleted.
pub fn clear(dir: &Path) -> io::Result<usize> {
    let mut n = 0;
    if !dir.exists() {
        return Ok(0);
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if name.starts_with('b') && name.ends_with(".json") {
            fs::remove_file(path)?;
            n += 1;
        }
    }
    Ok(n)
}
