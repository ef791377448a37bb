//! On-disk cache of echelon forms keyed by space, order, field and the
//! relation fingerprint.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{Echelon, EchelonData, FieldTag, QuotientBasis};
use crate::relations::SurfaceDiagram;
use crate::space::{space_name, Quotient};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub space: String,
    pub n: usize,
    pub field: FieldTag,
    pub fingerprint: String,
    pub echelon: EchelonData,
}

pub fn cache_path(dir: &Path, space: &str, n: usize, field: FieldTag, fingerprint: &str) -> PathBuf {
    dir.join(format!("{space}-n{n}-{}-{}.json", field.as_str(), &fingerprint[..16]))
}

/// Builds the quotient, reusing a cached echelon when one matches.
/// Returns the quotient and whether the cache was hit.
pub fn quotient_cached<K: SurfaceDiagram>(
    dir: Option<&Path>,
    n: usize,
    framed: bool,
    set: &crate::relations::RelationSet,
    field: FieldTag,
) -> Result<(Quotient<K>, bool)> {
    let Some(dir) = dir else {
        return Ok((Quotient::build(n, framed, set, field)?, false));
    };
    let columns = K::all(n, framed);
    let relations = crate::relations::relations_on(&columns, framed, set);
    let space = space_name::<K>(framed);
    let fp = crate::relations::fingerprint(&space, n, &relations, framed);
    let path = cache_path(dir, &space, n, field, &fp);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(entry) = serde_json::from_str::<CacheEntry>(&text) {
            if entry.version == CACHE_VERSION
                && entry.fingerprint == fp
                && entry.field == field
                && entry.n == n
                && entry.space == space
            {
                let echelon = Echelon::from_data(&entry.echelon)?;
                let basis = QuotientBasis::from_echelon(n, columns, echelon)?;
                return Ok((Quotient { framed, relations, basis }, true));
            }
        }
    }
    let basis = QuotientBasis::build(n, columns, relations.iter().map(|r| &r.terms), field)?;
    fs::create_dir_all(dir)?;
    let entry = CacheEntry {
        version: CACHE_VERSION,
        space,
        n,
        field,
        fingerprint: fp,
        echelon: basis.echelon().to_data(),
    };
    fs::write(&path, serde_json::to_string(&entry)?)?;
    Ok((Quotient { framed, relations, basis }, false))
}
