//! On-disk cache of form complexes, one JSON file per key.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use cyclix::exactlin::SparseMatrix;
use cyclix::forms::MixedComplex;

use crate::envelope::TOOL_VERSION;

/// Bumped whenever the layout of cached complexes changes. Files written by
/// another format or another tool version are ignored and rebuilt.
pub const CACHE_FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    tool_version: String,
    key: String,
    dims: Vec<usize>,
    b: Vec<SparseMatrix>,
    big_b: Vec<SparseMatrix>,
}

pub enum Lookup {
    Hit(MixedComplex),
    Miss,
    /// A file existed but could not be used.
    Stale(String),
}

pub fn path_for(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// The canonical bytes stored for `c`.
pub fn encode(key: &str, c: &MixedComplex) -> Vec<u8> {
    let file = CacheFile {
        format: CACHE_FORMAT,
        tool_version: TOOL_VERSION.to_string(),
        key: key.to_string(),
        dims: c.dims().to_vec(),
        b: (0..=c.top()).map(|n| c.b(n).clone()).collect(),
        big_b: (0..c.top()).map(|n| c.big_b(n).clone()).collect(),
    };
    serde_json::to_vec(&file).expect("complexes serialize")
}

fn decode(key: &str, bytes: &[u8]) -> Result<MixedComplex, String> {
    let file: CacheFile = serde_json::from_slice(bytes).map_err(|e| format!("unreadable cache file: {e}"))?;
    if file.format != CACHE_FORMAT {
        return Err(format!("cache format {} is not {CACHE_FORMAT}", file.format));
    }
    if file.tool_version != TOOL_VERSION {
        return Err(format!("written by version {}, this is {TOOL_VERSION}", file.tool_version));
    }
    if file.key != key {
        return Err("cache file belongs to another problem".into());
    }
    let c = MixedComplex::new(file.dims, file.b, file.big_b).map_err(|e| e.to_string())?;
    c.check_identities().map_err(|e| format!("cached complex is inconsistent: {e}"))?;
    Ok(c)
}

pub fn load(dir: &Path, key: &str) -> Lookup {
    match fs::read(path_for(dir, key)) {
        Err(_) => Lookup::Miss,
        Ok(bytes) => match decode(key, &bytes) {
            Ok(c) => Lookup::Hit(c),
            Err(e) => Lookup::Stale(e),
        },
    }
}

pub fn store(dir: &Path, key: &str, c: &MixedComplex) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = path_for(dir, key);
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, encode(key, c))?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}
