//! Finite formal linear combinations of diagrams with exact coefficients.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diagram::{FramedArcDiagram, FramedChordDiagram};
use crate::encoding::{format_arc, format_circle};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A diagram type usable as a basis key of a vector space.
pub trait DiagramKey: Clone + Ord + Hash + Debug + Send + Sync {
    fn order(&self) -> usize;
    fn encode(&self, framed: bool) -> String;
    /// Number of framing-1 chords.
    fn odd_chords(&self) -> usize;
}

impl DiagramKey for FramedChordDiagram {
    fn order(&self) -> usize {
        FramedChordDiagram::order(self)
    }
    fn encode(&self, framed: bool) -> String {
        format_circle(self, framed)
    }
    fn odd_chords(&self) -> usize {
        FramedChordDiagram::odd_chords(self)
    }
}

impl DiagramKey for FramedArcDiagram {
    fn order(&self) -> usize {
        FramedArcDiagram::order(self)
    }
    fn encode(&self, framed: bool) -> String {
        format_arc(self, framed)
    }
    fn odd_chords(&self) -> usize {
        FramedArcDiagram::odd_chords(self)
    }
}

/// Sparse vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramVector<K: DiagramKey> {
    terms: BTreeMap<K, Q>,
}

impl<K: DiagramKey> Default for DiagramVector<K> {
    fn default() -> Self {
        DiagramVector {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: DiagramKey> DiagramVector<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(k: K) -> Self {
        let mut v = Self::new();
        v.add_term(k, Q::one());
        v
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Order shared by all terms; `None` for the zero vector.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(|k| k.order())
    }

    /// Text form `c*WORD + c*WORD - ...`; `"0"` for the zero vector.
    pub fn to_text(&self, framed: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&format!("{}*{}", c.abs(), k.encode(framed)));
        }
        s
    }
}

impl<K: DiagramKey> FromIterator<(K, Q)> for DiagramVector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut v = Self::new();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}
