//! Products of arc and circle diagrams, well-definedness and commutativity
//! checks, and the sign involution `phi`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{circle_diagrams, enumerate_arc_diagrams, FramedArcDiagram, FramedChordDiagram};
use crate::error::{Error, Result};
use crate::linalg::{ColumnVector, FieldTag, QuotientBasis};
use crate::relations::{schema_space, RelationSet, SignSchema, SurfaceDiagram, SCHEMA_COUNT};
use crate::space::{space_name, Quotient};
use crate::vector::{q, DiagramKey, DiagramVector};

/// Schema paired with `uniform` under `phi`: the first non-uniform survivor
/// of [`schema_search`] at orders 2 and 3. It negates every term of the (0,1)
/// sector (moving chord even, fixed chord odd).
pub const STARRED_INDEX: u16 = 0x00f;

pub fn starred_schema() -> SignSchema {
    SignSchema::from_index(STARRED_INDEX).renamed("starred")
}

/// Looks up a schema by name: `uniform`, `starred`, or `schema-XYZ` (hex index).
pub fn named_schema(name: &str) -> Option<SignSchema> {
    match name {
        "uniform" => Some(SignSchema::uniform()),
        "starred" => Some(starred_schema()),
        _ => {
            let hex = name.strip_prefix("schema-")?;
            let idx = u16::from_str_radix(hex, 16).ok()?;
            (idx < SCHEMA_COUNT).then(|| SignSchema::from_index(idx))
        }
    }
}

pub fn multiply_arc(a: &FramedArcDiagram, b: &FramedArcDiagram) -> FramedArcDiagram {
    a.concat(b)
}

/// Bilinear extension of [`multiply_arc`].
pub fn multiply_arc_vectors(
    a: &DiagramVector<FramedArcDiagram>,
    b: &DiagramVector<FramedArcDiagram>,
) -> DiagramVector<FramedArcDiagram> {
    let mut out = DiagramVector::new();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_term(multiply_arc(x, y), cx * cy);
        }
    }
    out
}

/// Cuts both circles at the given edges, concatenates, and closes up.
pub fn multiply_circle(
    a: &FramedChordDiagram,
    b: &FramedChordDiagram,
    break_a: usize,
    break_b: usize,
) -> Result<FramedChordDiagram> {
    Ok(multiply_arc(&a.section(break_a)?, &b.section(break_b)?).closure())
}

/// A vector tagged with the space it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement<K: DiagramKey> {
    pub order: usize,
    pub framed: bool,
    pub vector: DiagramVector<K>,
}

impl<K: DiagramKey> GradedElement<K> {
    pub fn new(order: usize, framed: bool, vector: DiagramVector<K>) -> Result<Self> {
        if let Some(k) = vector.keys().find(|k| k.order() != order) {
            return Err(Error::OrderMismatch {
                expected: order,
                found: k.order(),
            });
        }
        if !framed && vector.keys().any(|k| k.odd_chords() > 0) {
            return Err(Error::Structural("unframed element carries framing 1".into()));
        }
        Ok(GradedElement { order, framed, vector })
    }

    /// Scales every diagram by `(-1)^(number of framing-1 chords)`.
    pub fn phi(&self) -> Result<Self> {
        if !self.framed {
            return Err(Error::Domain("phi is defined on framed spaces only".into()));
        }
        Ok(GradedElement {
            order: self.order,
            framed: true,
            vector: phi(&self.vector),
        })
    }
}

pub fn phi<K: DiagramKey>(v: &DiagramVector<K>) -> DiagramVector<K> {
    v.iter()
        .map(|(k, c)| {
            let c = if k.odd_chords() % 2 == 1 { -c.clone() } else { c.clone() };
            (k.clone(), c)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductWitness {
    pub a: String,
    pub b: String,
    pub break_a: usize,
    pub break_b: usize,
    pub product: String,
    pub reference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinedCounts {
    pub pairs: usize,
    pub products: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinedReport {
    pub mode: &'static str,
    pub space: String,
    pub relations: String,
    pub field: FieldTag,
    pub order_pair: [usize; 2],
    pub counts: WellDefinedCounts,
    pub failures: Vec<ProductWitness>,
}

impl WellDefinedReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every pair of circle diagrams and every pair of break edges, checks
/// that the product agrees with the edge-(0,0) product modulo `set`.
pub fn well_defined_check(
    order_a: usize,
    order_b: usize,
    framed: bool,
    set: &RelationSet,
    field: FieldTag,
) -> Result<WellDefinedReport> {
    let qb = Quotient::<FramedChordDiagram>::build(order_a + order_b, framed, set, field)?.basis;
    well_defined_in(&qb, order_a, order_b, framed, set, field)
}

fn well_defined_in(
    qb: &QuotientBasis<FramedChordDiagram>,
    order_a: usize,
    order_b: usize,
    framed: bool,
    set: &RelationSet,
    field: FieldTag,
) -> Result<WellDefinedReport> {
    let left = circle_diagrams(order_a, framed);
    let right = circle_diagrams(order_b, framed);
    let pairs: Vec<(&FramedChordDiagram, &FramedChordDiagram)> =
        left.iter().flat_map(|a| right.iter().map(move |b| (a, b))).collect();
    let per_pair: Vec<Result<(usize, Vec<ProductWitness>)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let reference = multiply_circle(a, b, 0, 0)?;
            // normal forms are memoized per product diagram
            let ref_nf = qb.reduce(&DiagramVector::singleton(reference.clone()))?;
            let mut cache: HashMap<FramedChordDiagram, bool> = HashMap::new();
            let mut failures = Vec::new();
            let mut products = 0;
            for ea in 0..a.edge_count() {
                for eb in 0..b.edge_count() {
                    products += 1;
                    let p = multiply_circle(a, b, ea, eb)?;
                    if p == reference {
                        continue;
                    }
                    let ok = match cache.get(&p) {
                        Some(&ok) => ok,
                        None => {
                            let ok = qb.reduce(&DiagramVector::singleton(p.clone()))? == ref_nf;
                            cache.insert(p.clone(), ok);
                            ok
                        }
                    };
                    if !ok {
                        failures.push(ProductWitness {
                            a: a.encode(framed),
                            b: b.encode(framed),
                            break_a: ea,
                            break_b: eb,
                            product: p.encode(framed),
                            reference: reference.encode(framed),
                        });
                    }
                }
            }
            Ok((products, failures))
        })
        .collect();
    let mut failures = Vec::new();
    let mut products = 0;
    for r in per_pair {
        let (p, f) = r?;
        products += p;
        failures.extend(f);
    }
    Ok(WellDefinedReport {
        mode: "well-defined",
        space: space_name::<FramedChordDiagram>(framed),
        relations: set.describe(),
        field,
        order_pair: [order_a, order_b],
        counts: WellDefinedCounts {
            pairs: pairs.len(),
            products,
            failures: failures.len(),
        },
        failures,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductSpace {
    Arc,
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorWitness {
    pub a: String,
    pub b: String,
    pub commutator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorCounts {
    pub pairs: usize,
    pub commuting: usize,
    pub non_commuting: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorReport {
    pub mode: &'static str,
    pub space: String,
    pub relations: String,
    pub field: FieldTag,
    pub order_pair: [usize; 2],
    /// Circle products only: whether the product was well defined for both
    /// orderings of the order pair.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub well_defined: Option<bool>,
    /// True when circle products were taken at edge 0 without being well defined.
    pub convention_dependent: bool,
    pub counts: CommutatorCounts,
    pub failures: Vec<CommutatorWitness>,
}

fn commutators<K: SurfaceDiagram>(
    qb: &QuotientBasis<K>,
    pairs: Vec<(String, String, DiagramVector<K>)>,
) -> Result<(CommutatorCounts, Vec<CommutatorWitness>)> {
    let framed_text = |v: &DiagramVector<K>| v.to_text(true);
    let verdicts: Vec<Result<bool>> = pairs.par_iter().map(|(_, _, v)| qb.in_span(v)).collect();
    let mut failures = Vec::new();
    let mut commuting = 0;
    for ((a, b, v), ok) in pairs.iter().zip(verdicts) {
        if ok? {
            commuting += 1;
        } else {
            failures.push(CommutatorWitness {
                a: a.clone(),
                b: b.clone(),
                commutator: framed_text(v),
            });
        }
    }
    Ok((
        CommutatorCounts {
            pairs: pairs.len(),
            commuting,
            non_commuting: failures.len(),
        },
        failures,
    ))
}

/// Tests `a*b - b*a` for membership in the relation span for every pair of
/// diagrams of the given orders. The verdict for framed arc diagrams is
/// experimental output, not a settled fact.
pub fn commutator_check(
    order_a: usize,
    order_b: usize,
    framed: bool,
    set: &RelationSet,
    field: FieldTag,
    space: ProductSpace,
) -> Result<CommutatorReport> {
    let total = order_a + order_b;
    match space {
        ProductSpace::Arc => {
            let qb = Quotient::<FramedArcDiagram>::build(total, framed, set, field)?.basis;
            let left = enumerate_arc_diagrams(order_a, framed);
            let right = enumerate_arc_diagrams(order_b, framed);
            let mut pairs = Vec::new();
            for a in &left {
                for b in &right {
                    let v = DiagramVector::singleton(multiply_arc(a, b))
                        .sub(&DiagramVector::singleton(multiply_arc(b, a)));
                    pairs.push((a.encode(framed), b.encode(framed), v));
                }
            }
            let (counts, failures) = commutators(&qb, pairs)?;
            Ok(CommutatorReport {
                mode: "commutativity",
                space: space_name::<FramedArcDiagram>(framed),
                relations: set.describe(),
                field,
                order_pair: [order_a, order_b],
                well_defined: None,
                convention_dependent: false,
                counts,
                failures,
            })
        }
        ProductSpace::Circle => {
            let qb = Quotient::<FramedChordDiagram>::build(total, framed, set, field)?.basis;
            let wd = well_defined_in(&qb, order_a, order_b, framed, set, field)?.holds()
                && well_defined_in(&qb, order_b, order_a, framed, set, field)?.holds();
            let left = circle_diagrams(order_a, framed);
            let right = circle_diagrams(order_b, framed);
            let mut pairs = Vec::new();
            for a in &left {
                for b in &right {
                    let v = DiagramVector::singleton(multiply_circle(a, b, 0, 0)?)
                        .sub(&DiagramVector::singleton(multiply_circle(b, a, 0, 0)?));
                    pairs.push((a.encode(framed), b.encode(framed), v));
                }
            }
            let (counts, failures) = commutators(&qb, pairs)?;
            Ok(CommutatorReport {
                mode: "commutativity",
                space: space_name::<FramedChordDiagram>(framed),
                relations: set.describe(),
                field,
                order_pair: [order_a, order_b],
                well_defined: Some(wd),
                convention_dependent: !wd,
                counts,
                failures,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub schema_a: String,
    pub schema_b: String,
    pub n: usize,
    pub field: FieldTag,
    pub rank_a: usize,
    pub rank_b: usize,
    pub generators_checked: usize,
    /// Generators of span A whose image under phi is outside span B.
    pub outside: usize,
    pub holds: bool,
}

/// Does `phi` carry the framed relation span of `schema_a` (4T plus framed
/// 1T) onto that of `schema_b`?
pub fn check_phi_intertwine(
    schema_a: &SignSchema,
    schema_b: &SignSchema,
    n: usize,
    field: FieldTag,
) -> Result<PhiReport> {
    let qa = Quotient::<FramedChordDiagram>::build(n, true, &RelationSet::four_t(schema_a.clone()).with_one_t(true), field)?;
    let qb = Quotient::<FramedChordDiagram>::build(n, true, &RelationSet::four_t(schema_b.clone()).with_one_t(true), field)?;
    let verdicts: Vec<Result<bool>> = qa
        .relations
        .par_iter()
        .map(|r| qb.basis.in_span(&phi(&r.terms)))
        .collect();
    let mut outside = 0;
    for v in verdicts {
        if !v? {
            outside += 1;
        }
    }
    let (rank_a, rank_b) = (qa.basis.rank(), qb.basis.rank());
    Ok(PhiReport {
        schema_a: schema_a.name().to_string(),
        schema_b: schema_b.name().to_string(),
        n,
        field,
        rank_a,
        rank_b,
        generators_checked: qa.relations.len(),
        outside,
        holds: outside == 0 && rank_a == rank_b,
    })
}

type SpanKey = Vec<(usize, ColumnVector)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaOrderResult {
    pub n: usize,
    pub schemas: usize,
    /// Distinct relation spans among all schemas.
    pub span_classes: usize,
    /// Ordered pairs (a, b) with phi(span a) = span b.
    pub intertwined_pairs: usize,
    /// Schemas b with phi(span uniform) = span b.
    pub survivors: Vec<String>,
    /// Schemas grouped by relation span, each group in index order.
    pub classes: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaSearchReport {
    pub mode: &'static str,
    pub field: FieldTag,
    pub orders: Vec<SchemaOrderResult>,
    /// Survivors of the first order that survive at every later order.
    pub stable_survivors: Vec<String>,
    /// Whether every survivor of the first order survives at every later one.
    pub stable: bool,
    pub starred: String,
}

fn span_keys(schema: &SignSchema, columns: &[FramedChordDiagram], field: FieldTag) -> Result<(SpanKey, SpanKey)> {
    let n = columns.first().map_or(0, |d| d.order());
    let set = RelationSet::four_t(schema.clone()).with_one_t(true);
    let rels = crate::relations::relations_on(columns, true, &set);
    let span = QuotientBasis::build(n, columns.to_vec(), rels.iter().map(|r| &r.terms), field)?;
    let images: Vec<DiagramVector<FramedChordDiagram>> = rels.iter().map(|r| phi(&r.terms)).collect();
    let image = QuotientBasis::build(n, columns.to_vec(), images.iter(), field)?;
    Ok((span.canonical_form(), image.canonical_form()))
}

/// Searches the schema space for pairs intertwined by `phi` at each order.
///
/// Two spans are compared through their reduced echelon forms, which are
/// unique per subspace; `(a, b)` is intertwined iff the reduced form of
/// `phi(span a)` equals that of `span b`.
pub fn schema_search(orders: &[usize], field: FieldTag) -> Result<SchemaSearchReport> {
    let schemas = schema_space(|_| true);
    let mut results = Vec::new();
    for &n in orders {
        let columns = circle_diagrams(n, true);
        let keys: Vec<Result<(SpanKey, SpanKey)>> =
            schemas.par_iter().map(|s| span_keys(s, &columns, field)).collect();
        let keys = keys.into_iter().collect::<Result<Vec<_>>>()?;
        let mut class_of: BTreeMap<&SpanKey, Vec<usize>> = BTreeMap::new();
        for (i, (span, _)) in keys.iter().enumerate() {
            class_of.entry(span).or_default().push(i);
        }
        let intertwined_pairs = keys
            .iter()
            .map(|(_, image)| class_of.get(image).map_or(0, Vec::len))
            .sum();
        let uniform_image = &keys[SignSchema::uniform().index() as usize].1;
        let survivors = class_of
            .get(uniform_image)
            .map(|v| v.iter().map(|&i| schemas[i].name().to_string()).collect())
            .unwrap_or_default();
        let mut classes: Vec<Vec<String>> = class_of
            .values()
            .map(|v| v.iter().map(|&i| schemas[i].name().to_string()).collect())
            .collect();
        classes.sort_by(|a, b| {
            let ia = u16::from_str_radix(&a[0][7..], 16).unwrap();
            let ib = u16::from_str_radix(&b[0][7..], 16).unwrap();
            ia.cmp(&ib)
        });
        results.push(SchemaOrderResult {
            n,
            schemas: schemas.len(),
            span_classes: class_of.len(),
            intertwined_pairs,
            survivors,
            classes,
        });
    }
    let (stable_survivors, stable) = match results.split_first() {
        None => (Vec::new(), true),
        Some((first, rest)) => {
            let keep: Vec<String> = first
                .survivors
                .iter()
                .filter(|s| rest.iter().all(|r| r.survivors.contains(s)))
                .cloned()
                .collect();
            let stable = keep.len() == first.survivors.len();
            (keep, stable)
        }
    };
    Ok(SchemaSearchReport {
        mode: "schema-search",
        field,
        orders: results,
        stable_survivors,
        stable,
        starred: starred_schema().to_file().name,
    })
}

/// Convenience for building `a*b - b*a` on arc vectors.
pub fn arc_commutator(a: &FramedArcDiagram, b: &FramedArcDiagram) -> DiagramVector<FramedArcDiagram> {
    let mut v = DiagramVector::singleton(multiply_arc(a, b));
    v.add_term(multiply_arc(b, a), q(-1));
    v
}
