//! The cache file: a version-stamped JSON document with exact rationals as
//! "p/q" strings. Load followed by save is byte-stable (maps are ordered).

use crate::hodge::{canonicalize, Canon, Flavor, HodgeStore};
use crate::invariants::{InvKey, InvariantStore};
use crate::rat::{rat_from_str, rat_to_string};
use crate::sympoly::SymPoly3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported cache version {0}")]
    Version(u32),
    #[error("bad cache entry: {0}")]
    Entry(String),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HodgeEntry {
    pub n1: u32,
    pub n2: u32,
    pub i: u32,
    pub j: u32,
    pub flavor: String,
    pub value: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolyTerm {
    pub e: [i64; 3],
    pub c: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InvEntry {
    pub n0: u32,
    pub n1: u32,
    pub n2: u32,
    pub poly: Vec<PolyTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub max_insertions: u32,
    pub solved_level: u32,
    pub hodge: Vec<HodgeEntry>,
    pub invariants: Vec<InvEntry>,
}

pub fn to_cache(
    hodge: &HodgeStore,
    inv: &InvariantStore,
    max_insertions: u32,
    solved_level: u32,
) -> CacheFile {
    let hodge_entries = hodge
        .iter()
        .filter_map(|(k, v)| {
            v.map(|r| HodgeEntry {
                n1: k.n1,
                n2: k.n2,
                i: k.i,
                j: k.j,
                flavor: k.flavor.tag().to_string(),
                value: rat_to_string(r),
            })
        })
        .collect();
    let inv_entries = inv
        .iter()
        .map(|(k, p)| InvEntry {
            n0: k.n0,
            n1: k.n1,
            n2: k.n2,
            poly: p
                .classes()
                .map(|(e, c)| PolyTerm {
                    e: *e,
                    c: rat_to_string(c),
                })
                .collect(),
        })
        .collect();
    CacheFile {
        version: CACHE_VERSION,
        max_insertions,
        solved_level,
        hodge: hodge_entries,
        invariants: inv_entries,
    }
}

pub fn from_cache(file: &CacheFile) -> Result<(HodgeStore, InvariantStore), CacheError> {
    if file.version != CACHE_VERSION {
        return Err(CacheError::Version(file.version));
    }
    let mut hodge = HodgeStore::new();
    for e in &file.hodge {
        let flavor = Flavor::from_tag(&e.flavor)
            .ok_or_else(|| CacheError::Entry(format!("flavor {:?}", e.flavor)))?;
        let key = match canonicalize(e.n1, e.n2, e.i, e.j, flavor) {
            Canon::Key(k) => k,
            Canon::Zero => {
                return Err(CacheError::Entry(format!(
                    "zero-normalized key A({},{}) ({},{})",
                    e.n1, e.n2, e.i, e.j
                )))
            }
        };
        let value = rat_from_str(&e.value)
            .ok_or_else(|| CacheError::Entry(format!("rational {:?}", e.value)))?;
        hodge
            .put(key, value)
            .map_err(|err| CacheError::Entry(err.to_string()))?;
    }
    let mut inv = InvariantStore::new();
    for e in &file.invariants {
        let mut poly = SymPoly3::zero();
        for t in &e.poly {
            let c = rat_from_str(&t.c)
                .ok_or_else(|| CacheError::Entry(format!("rational {:?}", t.c)))?;
            poly.add_class(t.e, c);
        }
        inv.put(
            InvKey {
                n0: e.n0,
                n1: e.n1,
                n2: e.n2,
            },
            poly,
        )
        .map_err(|err| CacheError::Entry(err.to_string()))?;
    }
    Ok((hodge, inv))
}

pub fn save(path: &std::path::Path, file: &CacheFile) -> Result<(), CacheError> {
    let text = serde_json::to_string_pretty(file)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn load(path: &std::path::Path) -> Result<CacheFile, CacheError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
