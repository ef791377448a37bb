//! A Z2 arc-labelling model of which framed diagrams arise from singular
//! knots, and the checks built on it.
//!
//! The circle of a diagram of order `n` is cut into `2n` arcs, arc `i`
//! running from point `i` to point `i+1`. A labelling `x` in GF(2)^{2n}
//! assigns the value of a fixed cohomology class to each arc. The designated
//! half of a chord with endpoints `i < j` consists of arcs `i..j`; its parity
//! is the sum of the labels on that half. In single-class mode a diagram is
//! realisable iff some labelling has total sum 0 (the knot itself evaluates
//! to 0) and reproduces every chord's framing as its half parity. With
//! trivial homology every labelling is zero, so only zero framings occur.
//!
//! This is a combinatorial model, not a construction of actual knots.

use serde::{Deserialize, Serialize};

use crate::diagram::{circle_diagrams, FramedChordDiagram};
use crate::error::Result;
use crate::linalg::{FieldTag, QuotientBasis};
use crate::relations::{four_t_quadruples, one_t_relations, RelationSet, SignSchema};
use crate::vector::DiagramKey;

/// Which realisability model to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum RealisabilityModel {
    /// H1(M; Z2) = 0.
    Trivial,
    /// One class α; `total_zero` imposes α[K] = 0.
    SingleClass {
        #[serde(default = "yes")]
        total_zero: bool,
    },
}

fn yes() -> bool {
    true
}

impl RealisabilityModel {
    pub fn single_class() -> Self {
        RealisabilityModel::SingleClass { total_zero: true }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RealisabilityModel::Trivial => "trivial",
            RealisabilityModel::SingleClass { .. } => "single-class",
        }
    }
}

impl std::str::FromStr for RealisabilityModel {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(RealisabilityModel::Trivial),
            "single-class" => Ok(RealisabilityModel::single_class()),
            _ => Ok(serde_json::from_str(s)?),
        }
    }
}

/// Anything that can decide realisability of a framed diagram.
pub trait Realisability: Sync {
    fn realisable(&self, d: &FramedChordDiagram) -> bool;
}

impl Realisability for RealisabilityModel {
    fn realisable(&self, d: &FramedChordDiagram) -> bool {
        realisable(d, *self)
    }
}

/// Rows are chords (by label), columns the `2n` arcs; bit `a` of row `c` is
/// set iff arc `a` lies in the designated half of `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfIncidence {
    pub arcs: usize,
    pub rows: Vec<Vec<bool>>,
}

impl HalfIncidence {
    pub fn new(d: &FramedChordDiagram) -> Self {
        let arcs = 2 * d.order();
        let rows = d
            .chord_endpoints()
            .iter()
            .map(|&(i, j)| (0..arcs).map(|a| a >= i && a < j).collect())
            .collect();
        HalfIncidence { arcs, rows }
    }

    /// The other half of chord `c`.
    pub fn complement(&self, c: usize) -> Vec<bool> {
        self.rows[c].iter().map(|&b| !b).collect()
    }
}

/// Solves `A x = b` over GF(2) for small dense systems; returns one solution.
fn solve_gf2(rows: &[Vec<bool>], rhs: &[bool], vars: usize) -> Option<Vec<bool>> {
    let mut m: Vec<(Vec<bool>, bool)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..vars {
        let Some(p) = (r..m.len()).find(|&i| m[i].0[col]) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i].0[col] {
                let (src, b) = (m[r].0.clone(), m[r].1);
                for (x, y) in m[i].0.iter_mut().zip(&src) {
                    *x ^= *y;
                }
                m[i].1 ^= b;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|(_, b)| *b) {
        return None;
    }
    let mut x = vec![false; vars];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i].1;
    }
    Some(x)
}

/// A labelling witnessing realisability in single-class mode, if any.
pub fn feasible_labelling(d: &FramedChordDiagram, total_zero: bool) -> Option<Vec<bool>> {
    let h = HalfIncidence::new(d);
    let mut rows = h.rows.clone();
    let mut rhs = d.framing().to_vec();
    if total_zero {
        rows.push(vec![true; h.arcs]);
        rhs.push(false);
    }
    if h.arcs == 0 {
        return Some(Vec::new());
    }
    solve_gf2(&rows, &rhs, h.arcs)
}

pub fn realisable(d: &FramedChordDiagram, m: RealisabilityModel) -> bool {
    match m {
        RealisabilityModel::Trivial => d.is_zero_framed(),
        RealisabilityModel::SingleClass { total_zero } => feasible_labelling(d, total_zero).is_some(),
    }
}

pub fn realisable_set(n: usize, m: &dyn Realisability) -> Vec<FramedChordDiagram> {
    circle_diagrams(n, true)
        .into_iter()
        .filter(|d| m.realisable(d))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    pub origin: crate::relations::Origin,
    pub diagrams: Vec<String>,
    pub realisable: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub mode: &'static str,
    pub model: RealisabilityModel,
    pub schema: String,
    pub n: usize,
    pub quadruples: usize,
    /// Quadruples whose diagrams are all realisable.
    pub all_realisable: usize,
    /// Quadruples with no realisable diagram.
    pub none_realisable: usize,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every 4T quadruple is realisable all-or-none.
pub fn lemma_4t_closure_check(n: usize, schema: &SignSchema, m: RealisabilityModel) -> LemmaReport {
    lemma_check_with(n, schema, &m, m)
}

/// Same as [`lemma_4t_closure_check`] with an arbitrary predicate; `model`
/// only labels the report.
pub fn lemma_check_with(
    n: usize,
    schema: &SignSchema,
    pred: &dyn Realisability,
    model: RealisabilityModel,
) -> LemmaReport {
    let bases = circle_diagrams(n, true);
    let quads = four_t_quadruples(&bases, schema, true);
    let mut all = 0;
    let mut none = 0;
    let mut violations = Vec::new();
    for quad in &quads {
        let flags: Vec<bool> = quad.terms.iter().map(|(d, _)| pred.realisable(d)).collect();
        if flags.iter().all(|&f| f) {
            all += 1;
        } else if flags.iter().all(|&f| !f) {
            none += 1;
        } else {
            violations.push(LemmaViolation {
                origin: quad.origin.clone(),
                diagrams: quad.terms.iter().map(|(d, _)| d.encode(true)).collect(),
                realisable: flags,
            });
        }
    }
    LemmaReport {
        mode: "lemma-4t",
        model,
        schema: schema.name().to_string(),
        n,
        quadruples: quads.len(),
        all_realisable: all,
        none_realisable: none,
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedDim {
    pub n: usize,
    pub model: RealisabilityModel,
    pub realisable_diagrams: usize,
    pub relations: usize,
    pub rank: usize,
    pub dim: usize,
    /// Set when the closure lemma failed, so some quadruples straddle the domain.
    pub flagged: bool,
}

/// Relations of `set` on framed diagrams of order `n` that are supported
/// entirely on realisable diagrams, and the quotient they cut out of the span
/// of realisable diagrams.
pub fn restricted_quotient(
    n: usize,
    set: &RelationSet,
    m: RealisabilityModel,
    field: FieldTag,
) -> Result<(QuotientBasis<FramedChordDiagram>, RestrictedDim)> {
    let domain = realisable_set(n, &m);
    let all = circle_diagrams(n, true);
    let mut relations = Vec::new();
    if let Some(schema) = &set.four_t {
        relations.extend(
            crate::relations::four_t_relations(&all, schema, true)
                .into_iter()
                .filter(|r| r.support.iter().all(|d| m.realisable(d))),
        );
    }
    if set.one_t {
        relations.extend(one_t_relations(&domain, true));
    }
    let qb = QuotientBasis::build(n, domain.clone(), relations.iter().map(|r| &r.terms), field)?;
    let flagged = set
        .four_t
        .as_ref()
        .is_some_and(|s| !lemma_4t_closure_check(n, s, m).holds());
    let info = RestrictedDim {
        n,
        model: m,
        realisable_diagrams: domain.len(),
        relations: relations.len(),
        rank: qb.rank(),
        dim: qb.dim(),
        flagged,
    };
    Ok((qb, info))
}

pub fn restricted_quotient_dim(
    n: usize,
    schema: &SignSchema,
    include_1t: bool,
    m: RealisabilityModel,
    field: FieldTag,
) -> Result<RestrictedDim> {
    let set = RelationSet::four_t(schema.clone()).with_one_t(include_1t);
    Ok(restricted_quotient(n, &set, m, field)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::parse_circle;

    #[test]
    fn solitary_chord_examples() {
        let odd = parse_circle("AA|1").unwrap();
        let even = parse_circle("AA|0").unwrap();
        assert!(!realisable(&odd, RealisabilityModel::Trivial));
        assert!(realisable(&even, RealisabilityModel::Trivial));
        assert!(realisable(&even, RealisabilityModel::single_class()));
        assert_eq!(feasible_labelling(&odd, true), Some(vec![true, true]));
    }

    #[test]
    fn empty_diagram_is_realisable() {
        let e = FramedChordDiagram::empty();
        assert!(realisable(&e, RealisabilityModel::Trivial));
        assert!(realisable(&e, RealisabilityModel::single_class()));
        assert_eq!(realisable_set(0, &RealisabilityModel::Trivial), vec![e]);
    }

    #[test]
    fn half_rows_partition_arcs() {
        let d = parse_circle("ABCACB|101").unwrap();
        let h = HalfIncidence::new(&d);
        for c in 0..3 {
            let comp = h.complement(c);
            assert!(h.rows[c].iter().zip(&comp).all(|(a, b)| a ^ b));
        }
    }

    #[test]
    fn model_parsing() {
        assert_eq!("trivial".parse::<RealisabilityModel>().unwrap(), RealisabilityModel::Trivial);
        assert_eq!(
            r#"{"mode":"single-class"}"#.parse::<RealisabilityModel>().unwrap(),
            RealisabilityModel::single_class()
        );
        assert!("bogus".parse::<RealisabilityModel>().is_err());
    }
}
