//! Weight systems: functionals on framed diagrams that vanish on the
//! relation span.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::diagram::{circle_diagrams, FramedChordDiagram};
use crate::encoding::parse_circle;
use crate::error::{Error, Result};
use crate::linalg::{to_gf2, FieldTag, QuotientBasis};
use crate::realisability::{realisable, restricted_quotient, RealisabilityModel};
use crate::relations::{four_t_relations, one_t_relations, Origin, RelationSet, SignSchema};
use crate::space::Quotient;
use crate::vector::{DiagramKey, DiagramVector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "domain", content = "model", rename_all = "kebab-case")]
pub enum Domain {
    All,
    Realisable(RealisabilityModel),
}

/// Values of a functional on diagrams of one order. Diagrams outside the
/// map evaluate to zero (when inside the domain).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub order: usize,
    pub framed: bool,
    pub domain: Domain,
    pub values: BTreeMap<FramedChordDiagram, Q>,
}

impl WeightTable {
    pub fn zero(order: usize, framed: bool, domain: Domain) -> Self {
        WeightTable {
            order,
            framed,
            domain,
            values: BTreeMap::new(),
        }
    }

    pub fn value(&self, d: &FramedChordDiagram) -> Q {
        self.values.get(d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn in_domain(&self, d: &FramedChordDiagram) -> bool {
        if d.order() != self.order || (!self.framed && !d.is_zero_framed()) {
            return false;
        }
        match self.domain {
            Domain::All => true,
            Domain::Realisable(m) => realisable(d, m),
        }
    }

    /// Evaluates the functional on a vector.
    pub fn eval(&self, v: &DiagramVector<FramedChordDiagram>) -> Q {
        v.iter().fold(Q::zero(), |acc, (d, c)| acc + c * self.value(d))
    }

    fn check_keys(&self) -> Result<()> {
        for d in self.values.keys() {
            if !self.in_domain(d) {
                return Err(Error::Domain(format!(
                    "table key {} is outside the declared domain",
                    d.encode(self.framed)
                )));
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> WeightTableFile {
        let (domain, model) = match self.domain {
            Domain::All => ("all".to_string(), None),
            Domain::Realisable(m) => ("realisable".to_string(), Some(m)),
        };
        WeightTableFile {
            n: self.order,
            framed: self.framed,
            domain,
            model,
            values: self
                .values
                .iter()
                .map(|(d, c)| (d.encode(self.framed), c.to_string()))
                .collect(),
        }
    }

    pub fn from_file(f: &WeightTableFile) -> Result<Self> {
        let domain = match (f.domain.as_str(), f.model) {
            ("all", _) => Domain::All,
            ("realisable", Some(m)) => Domain::Realisable(m),
            ("realisable", None) => {
                return Err(Error::Parse("realisable domain needs a model".into()))
            }
            (other, _) => return Err(Error::Parse(format!("unknown domain {other:?}"))),
        };
        let mut values = BTreeMap::new();
        for (k, v) in &f.values {
            let d = parse_circle(k)?;
            let c: Q = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad value {v:?} for {k}")))?;
            if !c.is_zero() {
                values.insert(d, c);
            }
        }
        let t = WeightTable {
            order: f.n,
            framed: f.framed,
            domain,
            values,
        };
        t.check_keys()?;
        Ok(t)
    }
}

fn default_true() -> bool {
    true
}

/// JSON form `{ "n", "framed", "domain", "model", "values": { "WORD|FRAMING": "p/q" } }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightTableFile {
    pub n: usize,
    #[serde(default = "default_true")]
    pub framed: bool,
    pub domain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<RealisabilityModel>,
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub origin: Origin,
    pub relation: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub schema: String,
    pub include_1t: bool,
    pub field: FieldTag,
    pub domain: Domain,
    pub generators: usize,
    pub checked: usize,
    /// Generators with no support in the domain.
    pub skipped: usize,
    /// Generators only partly inside the domain. Nonzero means the closure
    /// lemma failed for this model.
    pub straddling: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty() && self.straddling == 0
    }
}

fn relation_set_for(table: &WeightTable, schema: &SignSchema, include_1t: bool) -> Vec<crate::relations::RelationVector<FramedChordDiagram>> {
    let all = circle_diagrams(table.order, table.framed);
    let mut rels = four_t_relations(&all, schema, table.framed);
    if include_1t {
        rels.extend(one_t_relations(&all, table.framed));
    }
    rels
}

/// Evaluates the table on every relation generator; a generator passes iff
/// its residual is exactly zero in `field`.
pub fn validate(
    table: &WeightTable,
    schema: &SignSchema,
    include_1t: bool,
    field: FieldTag,
) -> Result<ValidationReport> {
    table.check_keys()?;
    let rels = relation_set_for(table, schema, include_1t);
    let mut checked = 0;
    let mut skipped = 0;
    let mut straddling = 0;
    let mut violations = Vec::new();
    for r in &rels {
        let inside = r.support.iter().filter(|d| table.in_domain(d)).count();
        if inside == 0 {
            skipped += 1;
            continue;
        }
        if inside < r.support.len() {
            straddling += 1;
            continue;
        }
        checked += 1;
        let residual = table.eval(&r.terms);
        let bad = match field {
            FieldTag::Rational => !residual.is_zero(),
            FieldTag::Gf2 => to_gf2(&residual)?,
        };
        if bad {
            violations.push(Violation {
                origin: r.origin.clone(),
                relation: r.terms.to_text(table.framed),
                residual: residual.to_string(),
            });
        }
    }
    Ok(ValidationReport {
        n: table.order,
        schema: schema.name().to_string(),
        include_1t,
        field,
        domain: table.domain,
        generators: rels.len(),
        checked,
        skipped,
        straddling,
        violations,
    })
}

/// The dual of a quotient: one functional per basis diagram.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub n: usize,
    pub framed: bool,
    pub field: FieldTag,
    pub basis: Vec<FramedChordDiagram>,
    pub functionals: Vec<WeightTable>,
}

impl WeightSpace {
    pub fn dimension(&self) -> usize {
        self.functionals.len()
    }
}

fn dual_of(qb: &QuotientBasis<FramedChordDiagram>, framed: bool, domain: Domain) -> Result<WeightSpace> {
    let basis: Vec<FramedChordDiagram> = qb.basis().into_iter().cloned().collect();
    let mut functionals: Vec<WeightTable> = basis
        .iter()
        .map(|_| WeightTable::zero(qb.order(), framed, domain))
        .collect();
    let slot: BTreeMap<&FramedChordDiagram, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    for d in qb.columns() {
        let nf = qb.reduce(&DiagramVector::singleton(d.clone()))?;
        for (b, c) in nf.iter() {
            functionals[slot[b]].values.insert(d.clone(), c.clone());
        }
    }
    Ok(WeightSpace {
        n: qb.order(),
        framed,
        field: qb.field(),
        basis,
        functionals,
    })
}

/// Functionals `δ_b`, `b` in the quotient basis, extended through the
/// normal-form map. With a model, the quotient is the one restricted to
/// realisable diagrams.
pub fn weight_space(
    n: usize,
    framed: bool,
    schema: &SignSchema,
    include_1t: bool,
    field: FieldTag,
    model: Option<RealisabilityModel>,
) -> Result<WeightSpace> {
    let set = RelationSet::four_t(schema.clone()).with_one_t(include_1t);
    match model {
        None => {
            let q = Quotient::<FramedChordDiagram>::build(n, framed, &set, field)?;
            dual_of(&q.basis, framed, Domain::All)
        }
        Some(m) => {
            let (qb, _) = restricted_quotient(n, &set, m, field)?;
            dual_of(&qb, true, Domain::Realisable(m))
        }
    }
}

/// Pulls an unframed table back along the map forgetting framings.
pub fn forget_framing(table: &WeightTable) -> Result<WeightTable> {
    if table.framed {
        return Err(Error::Domain("forget_framing expects an unframed table".into()));
    }
    table.check_keys()?;
    let mut values = BTreeMap::new();
    for d in circle_diagrams(table.order, true) {
        let v = table.value(&d.base().with_zero_framing());
        if !v.is_zero() {
            values.insert(d, v);
        }
    }
    Ok(WeightTable {
        order: table.order,
        framed: true,
        domain: Domain::All,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::q;

    #[test]
    fn zero_table_passes() {
        let t = WeightTable::zero(3, true, Domain::All);
        assert!(validate(&t, &SignSchema::uniform(), true, FieldTag::Rational).unwrap().passes());
    }

    #[test]
    fn one_t_catches_solitary_zero_chord() {
        let mut t = WeightTable::zero(1, true, Domain::All);
        t.values.insert(parse_circle("AA|0").unwrap(), q(1));
        let r = validate(&t, &SignSchema::uniform(), true, FieldTag::Rational).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].relation, "1*AA|0");
    }

    #[test]
    fn rejects_keys_outside_domain() {
        let mut t = WeightTable::zero(1, true, Domain::Realisable(RealisabilityModel::Trivial));
        t.values.insert(parse_circle("AA|1").unwrap(), q(1));
        assert!(validate(&t, &SignSchema::uniform(), false, FieldTag::Rational).is_err());
        let mut u = WeightTable::zero(1, false, Domain::All);
        u.values.insert(parse_circle("AA|1").unwrap(), q(1));
        assert!(forget_framing(&u).is_err());
    }

    #[test]
    fn file_round_trip() {
        let mut t = WeightTable::zero(2, true, Domain::Realisable(RealisabilityModel::single_class()));
        t.values.insert(parse_circle("ABAB|11").unwrap(), Q::new(3.into(), 4.into()));
        let f = t.to_file();
        let json = serde_json::to_string(&f).unwrap();
        let back: WeightTableFile = serde_json::from_str(&json).unwrap();
        assert_eq!(WeightTable::from_file(&back).unwrap(), t);
    }
}
