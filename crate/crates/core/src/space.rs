//! Quotient spaces assembled from a surface, a framing flag and a relation set.

use serde::Serialize;

use crate::diagram::{FramedArcDiagram, FramedChordDiagram};
use crate::error::Result;
use crate::linalg::{FieldTag, QuotientBasis};
use crate::relations::{fingerprint, relations_on, RelationSet, RelationVector, SurfaceDiagram};

/// Names the column set of a quotient, e.g. `circle-framed`.
pub fn space_name<K: SurfaceDiagram>(framed: bool) -> String {
    format!(
        "{}-{}",
        if K::CIRCULAR { "circle" } else { "arc" },
        if framed { "framed" } else { "unframed" }
    )
}

/// Columns, relations and quotient of one space at one order.
pub struct Quotient<K: SurfaceDiagram> {
    pub framed: bool,
    pub relations: Vec<RelationVector<K>>,
    pub basis: QuotientBasis<K>,
}

impl<K: SurfaceDiagram> Quotient<K> {
    pub fn build(n: usize, framed: bool, set: &RelationSet, field: FieldTag) -> Result<Self> {
        let columns = K::all(n, framed);
        let relations = relations_on(&columns, framed, set);
        let basis = QuotientBasis::build(n, columns, relations.iter().map(|r| &r.terms), field)?;
        Ok(Quotient {
            framed,
            relations,
            basis,
        })
    }

    pub fn fingerprint(&self) -> String {
        fingerprint(
            &space_name::<K>(self.framed),
            self.basis.order(),
            &self.relations,
            self.framed,
        )
    }

    pub fn row(&self) -> DimensionRow {
        DimensionRow {
            n: self.basis.order(),
            diagrams: self.basis.columns().len(),
            relations: self.relations.len(),
            rank: self.basis.rank(),
            dim: self.basis.dim(),
        }
    }
}

/// One line of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub n: usize,
    pub diagrams: usize,
    pub relations: usize,
    pub rank: usize,
    pub dim: usize,
}

pub fn circle_quotient(n: usize, framed: bool, set: &RelationSet, field: FieldTag) -> Result<QuotientBasis<FramedChordDiagram>> {
    Ok(Quotient::build(n, framed, set, field)?.basis)
}

pub fn arc_quotient(n: usize, framed: bool, set: &RelationSet, field: FieldTag) -> Result<QuotientBasis<FramedArcDiagram>> {
    Ok(Quotient::build(n, framed, set, field)?.basis)
}

/// Quotient dimension of circle diagrams of order `n`.
pub fn circle_dim(n: usize, framed: bool, set: &RelationSet, field: FieldTag) -> Result<usize> {
    Ok(circle_quotient(n, framed, set, field)?.dim())
}
