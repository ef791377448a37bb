//! Exact elimination over Q and GF(2).
//!
//! Rows are kept in echelon form keyed by their *largest* column. With this
//! pivot rule the non-pivot columns are exactly the columns a greedy scan in
//! ascending order would keep as independent modulo the relations, so the
//! quotient basis prefers earlier diagrams. Reducing a vector eliminates all
//! pivot columns from the top down, which leaves its normal form written in
//! basis columns only.
//!
//! The rational path uses sparse rows of `BigRational` with the pivot
//! normalized to 1. The GF(2) path uses dense rows packed into `u64` words.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{DiagramKey, DiagramVector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "q")]
    Rational,
    #[serde(rename = "gf2")]
    Gf2,
}

impl FieldTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Rational => "q",
            FieldTag::Gf2 => "gf2",
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" | "rational" => Ok(FieldTag::Rational),
            "gf2" | "GF2" | "f2" => Ok(FieldTag::Gf2),
            _ => Err(Error::Parse(format!("unknown field {s:?}"))),
        }
    }
}

/// Image of a rational in GF(2). Fails for even denominators.
pub fn to_gf2(c: &Q) -> Result<bool> {
    if c.denom().is_even() {
        return Err(Error::Field(c.to_string()));
    }
    Ok(c.numer().is_odd())
}

type SparseRow = Vec<(usize, Q)>;

#[derive(Clone, Debug)]
enum Rows {
    Rational(Vec<Option<SparseRow>>),
    Gf2(Vec<Option<Vec<u64>>>),
}

/// Row-echelon form of a set of vectors in a fixed number of columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rank: usize,
    rows: Rows,
}

/// Sparse column-indexed vector used at the elimination boundary.
pub type ColumnVector = BTreeMap<usize, Q>;

impl Echelon {
    pub fn new(field: FieldTag, ncols: usize) -> Self {
        let rows = match field {
            FieldTag::Rational => Rows::Rational(vec![None; ncols]),
            FieldTag::Gf2 => Rows::Gf2(vec![None; ncols]),
        };
        Echelon { ncols, rank: 0, rows }
    }

    pub fn field(&self) -> FieldTag {
        match self.rows {
            Rows::Rational(_) => FieldTag::Rational,
            Rows::Gf2(_) => FieldTag::Gf2,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        match &self.rows {
            Rows::Rational(r) => r[col].is_some(),
            Rows::Gf2(r) => r[col].is_some(),
        }
    }

    fn words(&self) -> usize {
        self.ncols.div_ceil(64)
    }

    fn pack(&self, v: &ColumnVector) -> Result<Vec<u64>> {
        let mut bits = vec![0u64; self.words()];
        for (&c, a) in v {
            if to_gf2(a)? {
                bits[c / 64] ^= 1 << (c % 64);
            }
        }
        Ok(bits)
    }

    fn unpack(bits: &[u64]) -> ColumnVector {
        let mut v = ColumnVector::new();
        for (w, &word) in bits.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let b = x.trailing_zeros() as usize;
                v.insert(w * 64 + b, Q::one());
                x &= x - 1;
            }
        }
        v
    }

    fn reduce_rational(rows: &[Option<SparseRow>], mut v: ColumnVector) -> ColumnVector {
        let mut cursor = usize::MAX;
        loop {
            let Some((&k, _)) = v.range(..cursor).next_back() else {
                break;
            };
            if let Some(row) = &rows[k] {
                let f = v.remove(&k).expect("present");
                for (c, a) in &row[..row.len() - 1] {
                    let e = v.entry(*c).or_insert_with(Q::zero);
                    *e -= &f * a;
                    if e.is_zero() {
                        v.remove(c);
                    }
                }
            }
            cursor = k;
        }
        v
    }

    fn reduce_gf2(rows: &[Option<Vec<u64>>], bits: &mut [u64]) {
        for w in (0..bits.len()).rev() {
            let mut skip = 0u64;
            loop {
                let live = bits[w] & !skip;
                if live == 0 {
                    break;
                }
                let b = 63 - live.leading_zeros() as usize;
                match &rows[w * 64 + b] {
                    Some(row) => {
                        for i in 0..=w {
                            bits[i] ^= row[i];
                        }
                    }
                    None => skip |= 1 << b,
                }
            }
        }
    }

    /// Normal form of `v`: supported on non-pivot columns only.
    pub fn reduce(&self, v: &ColumnVector) -> Result<ColumnVector> {
        self.check_columns(v)?;
        match &self.rows {
            Rows::Rational(rows) => Ok(Self::reduce_rational(rows, v.clone())),
            Rows::Gf2(rows) => {
                let mut bits = self.pack(v)?;
                Self::reduce_gf2(rows, &mut bits);
                Ok(Self::unpack(&bits))
            }
        }
    }

    fn check_columns(&self, v: &ColumnVector) -> Result<()> {
        if let Some((&c, _)) = v.iter().next_back() {
            if c >= self.ncols {
                return Err(Error::Structural(format!(
                    "column {c} out of range for {} columns",
                    self.ncols
                )));
            }
        }
        Ok(())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &ColumnVector) -> Result<bool> {
        self.check_columns(v)?;
        let ncols = self.ncols;
        let words = self.words();
        match &mut self.rows {
            Rows::Rational(rows) => {
                let r = Self::reduce_rational(rows, v.clone());
                let Some((&k, lead)) = r.iter().next_back() else {
                    return Ok(false);
                };
                let inv = lead.recip();
                let row: SparseRow = r.iter().map(|(&c, a)| (c, a * &inv)).collect();
                rows[k] = Some(row);
            }
            Rows::Gf2(rows) => {
                let mut bits = vec![0u64; words];
                for (&c, a) in v {
                    if to_gf2(a)? {
                        bits[c / 64] ^= 1 << (c % 64);
                    }
                }
                Self::reduce_gf2(rows, &mut bits);
                let Some(w) = bits.iter().rposition(|&x| x != 0) else {
                    return Ok(false);
                };
                let k = w * 64 + 63 - bits[w].leading_zeros() as usize;
                debug_assert!(k < ncols);
                rows[k] = Some(bits);
            }
        }
        self.rank += 1;
        Ok(true)
    }

    /// Fully reduced rows, sorted by pivot. Two echelons span the same space
    /// iff their canonical forms are equal.
    pub fn canonical_form(&self) -> Vec<(usize, ColumnVector)> {
        let mut out = Vec::with_capacity(self.rank);
        for k in 0..self.ncols {
            let row: Option<ColumnVector> = match &self.rows {
                Rows::Rational(rows) => rows[k].as_ref().map(|r| {
                    let rest: ColumnVector = r[..r.len() - 1].iter().cloned().collect();
                    let mut red = Self::reduce_rational(rows, rest);
                    red.insert(k, Q::one());
                    red
                }),
                Rows::Gf2(rows) => rows[k].as_ref().map(|r| {
                    let mut rest = r.clone();
                    rest[k / 64] ^= 1 << (k % 64);
                    Self::reduce_gf2(rows, &mut rest);
                    rest[k / 64] |= 1 << (k % 64);
                    Self::unpack(&rest)
                }),
            };
            if let Some(r) = row {
                out.push((k, r));
            }
        }
        out
    }

    pub fn to_data(&self) -> EchelonData {
        let rows = match &self.rows {
            Rows::Rational(rows) => rows
                .iter()
                .flatten()
                .map(|r| r.iter().map(|(c, a)| (*c, a.to_string())).collect())
                .collect(),
            Rows::Gf2(rows) => rows
                .iter()
                .flatten()
                .map(|r| {
                    Self::unpack(r)
                        .into_keys()
                        .map(|c| (c, "1".to_string()))
                        .collect()
                })
                .collect(),
        };
        EchelonData {
            field: self.field(),
            ncols: self.ncols,
            rows,
        }
    }

    /// Rebuilds an echelon from stored rows. Rows are re-inserted, so a
    /// corrupted file can only lose rank, never produce a wrong span.
    pub fn from_data(data: &EchelonData) -> Result<Self> {
        let mut e = Echelon::new(data.field, data.ncols);
        for row in &data.rows {
            let v = row
                .iter()
                .map(|(c, a)| {
                    a.parse::<Q>()
                        .map(|a| (*c, a))
                        .map_err(|_| Error::Parse(format!("bad coefficient {a:?}")))
                })
                .collect::<Result<ColumnVector>>()?;
            e.insert(&v)?;
        }
        Ok(e)
    }
}

/// Serializable echelon rows.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EchelonData {
    pub field: FieldTag,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, String)>>,
}

/// Rank of the span of `vectors`. All vectors must share one order.
pub fn rank<K: DiagramKey>(vectors: &[DiagramVector<K>], field: FieldTag) -> Result<usize> {
    let mut order = None;
    let mut cols: Vec<K> = Vec::new();
    for v in vectors {
        if let Some(o) = v.order() {
            match order {
                None => order = Some(o),
                Some(e) if e != o => return Err(Error::OrderMismatch { expected: e, found: o }),
                _ => {}
            }
        }
        for k in v.keys() {
            if k.order() != order.unwrap_or(k.order()) {
                return Err(Error::OrderMismatch {
                    expected: order.unwrap(),
                    found: k.order(),
                });
            }
            cols.push(k.clone());
        }
    }
    cols.sort();
    cols.dedup();
    let qb = QuotientBasis::build(order.unwrap_or(0), cols, vectors.iter(), field)?;
    Ok(qb.rank())
}

/// A quotient of the span of `columns` by a relation span, with a chosen
/// basis and the normal-form map.
#[derive(Clone, Debug)]
pub struct QuotientBasis<K: DiagramKey> {
    order: usize,
    columns: Vec<K>,
    index: HashMap<K, usize>,
    echelon: Echelon,
}

impl<K: DiagramKey> QuotientBasis<K> {
    /// `columns` must be sorted; they fix the column order and hence the basis.
    pub fn build<'a>(
        order: usize,
        columns: Vec<K>,
        relations: impl IntoIterator<Item = &'a DiagramVector<K>>,
        field: FieldTag,
    ) -> Result<Self>
    where
        K: 'a,
    {
        let mut qb = Self::empty(order, columns, field)?;
        for r in relations {
            qb.add_relation(r)?;
        }
        Ok(qb)
    }

    /// Quotient by the zero space.
    pub fn empty(order: usize, columns: Vec<K>, field: FieldTag) -> Result<Self> {
        if let Some(k) = columns.iter().find(|k| k.order() != order) {
            return Err(Error::OrderMismatch {
                expected: order,
                found: k.order(),
            });
        }
        debug_assert!(columns.windows(2).all(|w| w[0] < w[1]));
        let index = columns
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        let echelon = Echelon::new(field, columns.len());
        Ok(QuotientBasis {
            order,
            columns,
            index,
            echelon,
        })
    }

    /// Restores a quotient from cached echelon rows.
    pub fn from_echelon(order: usize, columns: Vec<K>, echelon: Echelon) -> Result<Self> {
        if echelon.ncols() != columns.len() {
            return Err(Error::Structural("cached echelon has the wrong width".into()));
        }
        let mut qb = Self::empty(order, columns, echelon.field())?;
        qb.echelon = echelon;
        Ok(qb)
    }

    pub fn add_relation(&mut self, r: &DiagramVector<K>) -> Result<bool> {
        let v = self.to_columns(r)?;
        self.echelon.insert(&v)
    }

    fn to_columns(&self, v: &DiagramVector<K>) -> Result<ColumnVector> {
        let mut out = ColumnVector::new();
        for (k, c) in v.iter() {
            if k.order() != self.order {
                return Err(Error::OrderMismatch {
                    expected: self.order,
                    found: k.order(),
                });
            }
            let i = self.index.get(k).ok_or_else(|| {
                Error::Structural(format!("diagram {} is not a column of this space", k.encode(true)))
            })?;
            out.insert(*i, c.clone());
        }
        Ok(out)
    }

    fn from_columns(&self, v: ColumnVector) -> DiagramVector<K> {
        v.into_iter()
            .map(|(i, c)| (self.columns[i].clone(), c))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> FieldTag {
        self.echelon.field()
    }

    pub fn columns(&self) -> &[K] {
        &self.columns
    }

    pub fn contains(&self, k: &K) -> bool {
        self.index.contains_key(k)
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dim(&self) -> usize {
        self.columns.len() - self.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Diagrams whose classes form the basis, in column order.
    pub fn basis(&self) -> Vec<&K> {
        (0..self.columns.len())
            .filter(|&i| !self.echelon.is_pivot(i))
            .map(|i| &self.columns[i])
            .collect()
    }

    /// Normal form in terms of basis diagrams. Over GF(2) coefficients are
    /// returned as 0/1 rationals.
    pub fn reduce(&self, v: &DiagramVector<K>) -> Result<DiagramVector<K>> {
        let cols = self.to_columns(v)?;
        Ok(self.from_columns(self.echelon.reduce(&cols)?))
    }

    pub fn in_span(&self, v: &DiagramVector<K>) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn canonical_form(&self) -> Vec<(usize, ColumnVector)> {
        self.echelon.canonical_form()
    }
}

/// Integer coefficient as a rational; convenience for tests and oracles.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}
