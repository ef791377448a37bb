//! Generators of the 1T and 4T relation subspaces.
//!
//! A 4T generator is indexed by a base diagram, a *moving* endpoint `p` of a
//! chord `c`, and a second chord `d` with endpoints `q1 < q2` (positions in the
//! base word). Removing `p` and reinserting it at the four slots adjacent to
//! `d`'s endpoints gives the four terms, in this order:
//!
//! 1. just after `q1`
//! 2. just before `q2`
//! 3. just after `q2`
//! 4. just before `q1`
//!
//! Framings travel with their chords. Term `i` gets the sign
//! `schema.sign(i, framing(c), framing(d))`; the classical signs are
//! `(+1, -1, +1, -1)`.

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diagram::{
    chord_endpoints, circle_diagrams, enumerate_arc_diagrams, FramedArcDiagram,
    FramedChordDiagram,
};
use crate::encoding::{parse_arc, parse_circle};
use crate::error::{Error, Result};
use crate::vector::{q, DiagramKey, DiagramVector, Q};

/// Signs of the four terms in the all-zero framing sector.
pub const CLASSICAL_SIGNS: [i8; 4] = [1, -1, 1, -1];

/// Sectors other than (0,0), in the bit order used by [`SignSchema::from_index`].
const FREE_SECTORS: [(bool, bool); 3] = [(false, true), (true, false), (true, true)];

/// Number of schemas with the (0,0) sector pinned to the classical signs.
pub const SCHEMA_COUNT: u16 = 1 << 12;

/// Sign table for framed 4T generators, keyed by term index and the framings
/// of the moving chord `c` and the fixed chord `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignSchema {
    name: String,
    // signs[fc][fd][term - 1]
    signs: [[[i8; 4]; 2]; 2],
}

impl SignSchema {
    /// Classical signs in every framing sector.
    pub fn uniform() -> Self {
        Self::from_index(0).renamed("uniform")
    }

    /// Schema number `index` of the search space: bit `4*s + t` flips the
    /// sign of term `t+1` in free sector `s` (sectors (0,1), (1,0), (1,1)).
    pub fn from_index(index: u16) -> Self {
        assert!(index < SCHEMA_COUNT, "schema index out of range");
        let mut signs = [[CLASSICAL_SIGNS; 2]; 2];
        for (s, &(fc, fd)) in FREE_SECTORS.iter().enumerate() {
            for t in 0..4 {
                if index >> (4 * s + t) & 1 == 1 {
                    signs[fc as usize][fd as usize][t] *= -1;
                }
            }
        }
        SignSchema {
            name: format!("schema-{index:03x}"),
            signs,
        }
    }

    /// Position of this table in the search space.
    pub fn index(&self) -> u16 {
        let mut idx = 0;
        for (s, &(fc, fd)) in FREE_SECTORS.iter().enumerate() {
            for t in 0..4 {
                if self.signs[fc as usize][fd as usize][t] != CLASSICAL_SIGNS[t] {
                    idx |= 1 << (4 * s + t);
                }
            }
        }
        idx
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `term` is 1-based.
    pub fn sign(&self, term: usize, fc: bool, fd: bool) -> i8 {
        self.signs[fc as usize][fd as usize][term - 1]
    }

    pub fn sector(&self, fc: bool, fd: bool) -> [i8; 4] {
        self.signs[fc as usize][fd as usize]
    }

    pub fn to_file(&self) -> SchemaFile {
        let mut signs = BTreeMap::new();
        for fc in [false, true] {
            for fd in [false, true] {
                for t in 1..=4 {
                    signs.insert(
                        format!("{},{},{}", t, fc as u8, fd as u8),
                        self.sign(t, fc, fd),
                    );
                }
            }
        }
        SchemaFile {
            name: self.name.clone(),
            signs,
        }
    }

    pub fn from_file(file: &SchemaFile) -> Result<Self> {
        let mut signs = [[[0i8; 4]; 2]; 2];
        for (key, &s) in &file.signs {
            let parts: Vec<&str> = key.split(',').collect();
            let bad = || Error::Parse(format!("bad schema key {key:?}"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let t: usize = parts[0].parse().map_err(|_| bad())?;
            let fc: usize = parts[1].parse().map_err(|_| bad())?;
            let fd: usize = parts[2].parse().map_err(|_| bad())?;
            if !(1..=4).contains(&t) || fc > 1 || fd > 1 {
                return Err(bad());
            }
            if s != 1 && s != -1 {
                return Err(Error::Parse(format!("sign {s} for {key:?} is not ±1")));
            }
            signs[fc][fd][t - 1] = s;
        }
        if signs.iter().flatten().flatten().any(|&s| s == 0) {
            return Err(Error::Parse("schema table is missing entries".into()));
        }
        if signs[0][0] != CLASSICAL_SIGNS {
            return Err(Error::Structural(
                "the (0,0) sector must carry the classical 4T signs".into(),
            ));
        }
        Ok(SignSchema {
            name: file.name.clone(),
            signs,
        })
    }
}

/// JSON form `{ "name": ..., "signs": { "i,fc,fd": ±1 } }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchemaFile {
    pub name: String,
    pub signs: BTreeMap<String, i8>,
}

/// All schemas with classical (0,0) sector, in index order, kept when
/// `keep` returns true.
pub fn schema_space(mut keep: impl FnMut(&SignSchema) -> bool) -> Vec<SignSchema> {
    (0..SCHEMA_COUNT)
        .map(SignSchema::from_index)
        .filter(|s| keep(s))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    OneT,
    FourT,
}

/// Where a relation vector came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Origin {
    pub kind: GeneratorKind,
    /// Encoding of the base diagram.
    pub base: String,
    /// Moving endpoint (4T only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moving_point: Option<usize>,
    /// Label of the fixed chord (4T only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_chord: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct RelationVector<K: DiagramKey> {
    pub terms: DiagramVector<K>,
    pub origin: Origin,
    /// The diagrams the generator was built from, before merging
    /// (one for 1T, four for 4T; repeats possible).
    pub support: Vec<K>,
}

/// The four placements of one 4T generator with their signs.
#[derive(Clone, Debug)]
pub struct FourTQuadruple<K> {
    pub origin: Origin,
    pub terms: [(K, i8); 4],
}

impl<K: DiagramKey> FourTQuadruple<K> {
    pub fn vector(&self) -> DiagramVector<K> {
        self.terms
            .iter()
            .map(|(k, s)| (k.clone(), q(*s as i64)))
            .collect()
    }
}

/// Diagrams living on a circle or a line, with the operations the relation
/// generators need.
pub trait SurfaceDiagram: DiagramKey {
    const CIRCULAR: bool;
    fn parts(&self) -> (Vec<usize>, Vec<bool>);
    fn from_parts(partner: &[usize], point_frame: &[bool]) -> Self;
    fn framing_of(&self, label: usize) -> bool;
    fn label_word(&self) -> &[u16];
    /// Zero-framed or all framed diagrams of order `n`, sorted.
    fn all(n: usize, framed: bool) -> Vec<Self>;
    fn parse(text: &str) -> Result<Self>;
}

impl SurfaceDiagram for FramedChordDiagram {
    const CIRCULAR: bool = true;
    fn parts(&self) -> (Vec<usize>, Vec<bool>) {
        (self.pairing(), self.point_frames())
    }
    fn from_parts(partner: &[usize], point_frame: &[bool]) -> Self {
        FramedChordDiagram::from_point_frames(partner, point_frame)
    }
    fn framing_of(&self, label: usize) -> bool {
        self.framing()[label]
    }
    fn label_word(&self) -> &[u16] {
        self.word()
    }
    fn all(n: usize, framed: bool) -> Vec<Self> {
        circle_diagrams(n, framed)
    }
    fn parse(text: &str) -> Result<Self> {
        parse_circle(text)
    }
}

impl SurfaceDiagram for FramedArcDiagram {
    const CIRCULAR: bool = false;
    fn parts(&self) -> (Vec<usize>, Vec<bool>) {
        (self.pairing(), self.point_frames())
    }
    fn from_parts(partner: &[usize], point_frame: &[bool]) -> Self {
        FramedArcDiagram::from_point_frames(partner, point_frame)
    }
    fn framing_of(&self, label: usize) -> bool {
        self.framing()[label]
    }
    fn label_word(&self) -> &[u16] {
        self.word()
    }
    fn all(n: usize, framed: bool) -> Vec<Self> {
        enumerate_arc_diagrams(n, framed)
    }
    fn parse(text: &str) -> Result<Self> {
        parse_arc(text)
    }
}

/// Endpoints `(i, j)`, `i < j`, are adjacent: neighbours on the line, or
/// additionally across the seam on the circle.
fn solitary<K: SurfaceDiagram>(i: usize, j: usize, m: usize) -> bool {
    j == i + 1 || (K::CIRCULAR && i == 0 && j + 1 == m)
}

/// 1T generators: one single-term relation per diagram with a solitary chord
/// of framing 0.
pub fn one_t_relations<K: SurfaceDiagram>(diagrams: &[K], framed: bool) -> Vec<RelationVector<K>> {
    diagrams
        .iter()
        .filter(|d| {
            let m = d.label_word().len();
            chord_endpoints(d.label_word())
                .iter()
                .enumerate()
                .any(|(l, &(i, j))| solitary::<K>(i, j, m) && !d.framing_of(l))
        })
        .map(|d| RelationVector {
            terms: DiagramVector::singleton(d.clone()),
            origin: Origin {
                kind: GeneratorKind::OneT,
                base: d.encode(framed),
                moving_point: None,
                fixed_chord: None,
            },
            support: vec![d.clone()],
        })
        .collect()
}

fn quadruples_of<K: SurfaceDiagram>(base: &K, schema: &SignSchema, framed: bool) -> Vec<FourTQuadruple<K>> {
    let word = base.label_word();
    let m = word.len();
    let (partner, frames) = base.parts();
    let ends = chord_endpoints(word);
    let mut out = Vec::new();
    for p in 0..m {
        let c = word[p] as usize;
        // remaining points, in circle order from p+1, or in line order
        let rest: Vec<usize> = if K::CIRCULAR {
            (1..m).map(|k| (p + k) % m).collect()
        } else {
            (0..m).filter(|&k| k != p).collect()
        };
        for (d, &(q1, q2)) in ends.iter().enumerate() {
            if d == c {
                continue;
            }
            let i1 = rest.iter().position(|&x| x == q1).unwrap();
            let i2 = rest.iter().position(|&x| x == q2).unwrap();
            let slots = [i1 + 1, i2, i2 + 1, i1];
            let fc = base.framing_of(c);
            let fd = base.framing_of(d);
            let terms = std::array::from_fn(|t| {
                let mut seq = rest.clone();
                seq.insert(slots[t], p);
                let mut pos = vec![0; m];
                for (i, &x) in seq.iter().enumerate() {
                    pos[x] = i;
                }
                let new_partner: Vec<usize> = seq.iter().map(|&x| pos[partner[x]]).collect();
                let new_frames: Vec<bool> = seq.iter().map(|&x| frames[x]).collect();
                (
                    K::from_parts(&new_partner, &new_frames),
                    schema.sign(t + 1, fc, fd),
                )
            });
            out.push(FourTQuadruple {
                origin: Origin {
                    kind: GeneratorKind::FourT,
                    base: base.encode(framed),
                    moving_point: Some(p),
                    fixed_chord: Some(d),
                },
                terms,
            });
        }
    }
    out
}

/// Every 4T quadruple over the given base diagrams, in indexing order.
pub fn four_t_quadruples<K: SurfaceDiagram>(
    bases: &[K],
    schema: &SignSchema,
    framed: bool,
) -> Vec<FourTQuadruple<K>> {
    let per_base: Vec<Vec<FourTQuadruple<K>>> = bases
        .par_iter()
        .map(|b| quadruples_of(b, schema, framed))
        .collect();
    per_base.into_iter().flatten().collect()
}

/// 4T generators with zero vectors and exact duplicates removed; first
/// occurrence in indexing order wins.
pub fn four_t_relations<K: SurfaceDiagram>(
    bases: &[K],
    schema: &SignSchema,
    framed: bool,
) -> Vec<RelationVector<K>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for quad in four_t_quadruples(bases, schema, framed) {
        let terms = quad.vector();
        if terms.is_zero() || !seen.insert(terms.clone()) {
            continue;
        }
        out.push(RelationVector {
            terms,
            origin: quad.origin,
            support: quad.terms.into_iter().map(|(k, _)| k).collect(),
        });
    }
    out
}

/// 1T relations on circle diagrams of order `n` (zero-framed when `framed`
/// is false).
pub fn generate_1t(n: usize, framed: bool) -> Vec<RelationVector<FramedChordDiagram>> {
    one_t_relations(&circle_diagrams(n, framed), framed)
}

/// 4T relations on circle diagrams. `None` gives the classical relation on
/// unframed diagrams; a schema gives the framed family over all framings.
pub fn generate_4t(n: usize, schema: Option<&SignSchema>) -> Vec<RelationVector<FramedChordDiagram>> {
    match schema {
        None => four_t_relations(&circle_diagrams(n, false), &SignSchema::uniform(), false),
        Some(s) => four_t_relations(&circle_diagrams(n, true), s, true),
    }
}

/// Which relations to quotient by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub one_t: bool,
    /// Schema of the 4T family; on unframed spaces only its classical (0,0)
    /// sector is ever used.
    pub four_t: Option<SignSchema>,
}

impl RelationSet {
    pub fn none() -> Self {
        RelationSet {
            one_t: false,
            four_t: None,
        }
    }

    pub fn four_t(schema: SignSchema) -> Self {
        RelationSet {
            one_t: false,
            four_t: Some(schema),
        }
    }

    pub fn with_one_t(mut self, on: bool) -> Self {
        self.one_t = on;
        self
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(s) = &self.four_t {
            parts.push(format!("4t[{}]", s.name()));
        }
        if self.one_t {
            parts.push("1t".into());
        }
        if parts.is_empty() {
            "none".into()
        } else {
            parts.join(",")
        }
    }
}

/// All generators of `set` on the diagrams `columns` (4T first, then 1T).
pub fn relations_on<K: SurfaceDiagram>(
    columns: &[K],
    framed: bool,
    set: &RelationSet,
) -> Vec<RelationVector<K>> {
    let mut out = Vec::new();
    if let Some(schema) = &set.four_t {
        out.extend(four_t_relations(columns, schema, framed));
    }
    if set.one_t {
        out.extend(one_t_relations(columns, framed));
    }
    out
}

/// One relation per line, in generation order.
pub fn relation_file_text<K: DiagramKey>(relations: &[RelationVector<K>], framed: bool) -> String {
    let mut s = String::new();
    for r in relations {
        s.push_str(&r.terms.to_text(framed));
        s.push('\n');
    }
    s
}

/// Parses one line of a relation file.
pub fn parse_relation_line<K: SurfaceDiagram>(line: &str) -> Result<DiagramVector<K>> {
    let line = line.trim();
    if line == "0" {
        return Ok(DiagramVector::new());
    }
    let mut v = DiagramVector::new();
    let mut sign = 1i64;
    let mut rest = line;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    }
    loop {
        let (term, tail) = match rest.find([' ']) {
            Some(i) => (&rest[..i], Some(&rest[i..])),
            None => (rest, None),
        };
        let (c, word) = term
            .split_once('*')
            .ok_or_else(|| Error::Parse(format!("term {term:?} lacks '*'")))?;
        let c: Q = c
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
        v.add_term(K::parse(word)?, c * q(sign));
        let Some(tail) = tail else { break };
        let tail = tail.trim_start();
        let (op, after) = tail.split_at(1);
        sign = match op {
            "+" => 1,
            "-" => -1,
            _ => return Err(Error::Parse(format!("expected '+' or '-' in {line:?}"))),
        };
        rest = after.trim_start();
    }
    Ok(v)
}

/// JSON form of a relation vector.
#[derive(Clone, Debug, Serialize)]
pub struct RelationRecord {
    pub terms: BTreeMap<String, String>,
    pub origin: Origin,
}

pub fn relation_records<K: DiagramKey>(relations: &[RelationVector<K>], framed: bool) -> Vec<RelationRecord> {
    relations
        .iter()
        .map(|r| RelationRecord {
            terms: r
                .terms
                .iter()
                .map(|(k, c)| (k.encode(framed), c.to_string()))
                .collect(),
            origin: r.origin.clone(),
        })
        .collect()
}

/// Stable hash of a relation family: SHA-256 over a header naming the space
/// followed by the sorted relation lines.
pub fn fingerprint<K: DiagramKey>(space: &str, order: usize, relations: &[RelationVector<K>], framed: bool) -> String {
    let mut lines: Vec<String> = relations.iter().map(|r| r.terms.to_text(framed)).collect();
    lines.sort();
    let mut h = Sha256::new();
    h.update(format!("{space} n={order}\n"));
    for l in lines {
        h.update(l);
        h.update("\n");
    }
    hex::encode(h.finalize())
}

/// Sum of coefficients; only used as a sanity bound in tests and reports.
pub fn coefficient_sum<K: DiagramKey>(v: &DiagramVector<K>) -> Q {
    v.iter().fold(Q::zero(), |acc, (_, c)| acc + c)
}
