use std::io::Write;
use std::process::{Command as Process, Stdio};

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use chordspace::algebra::{
    check_phi_intertwine, commutator_check, schema_search, well_defined_check, ProductSpace,
};
use chordspace::cache::quotient_cached;
use chordspace::diagram::{enumerate_arc_diagrams, FramedArcDiagram};
use chordspace::encoding::{format_arc, format_circle, parse_circle};
use chordspace::realisability::{lemma_4t_closure_check, restricted_quotient};
use chordspace::relations::{relation_file_text, relation_records, relations_on, SurfaceDiagram};
use chordspace::render::{to_dot, to_tikz};
use chordspace::space::{space_name, DimensionRow};
use chordspace::weights::{validate, weight_space, WeightTable, WeightTableFile};
use chordspace::diagram::circle_diagrams;
use chordspace::{Error, FramedChordDiagram};

use crate::args::*;

/// What a command produced.
pub struct Outcome {
    pub stdout: String,
    /// `false` when the verdict contradicts the expectation.
    pub expected: bool,
    pub summary: Option<String>,
    pub fingerprints: Vec<String>,
}

impl Outcome {
    fn plain(stdout: String) -> Self {
        Outcome {
            stdout,
            expected: true,
            summary: None,
            fingerprints: Vec::new(),
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn capacity(order: usize, max: usize) -> Result<()> {
    if order > max {
        return Err(Error::Capacity { order, max }.into());
    }
    Ok(())
}

#[derive(Serialize)]
struct DiagramRecord {
    encoding: String,
    n: usize,
    pairing: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    framing: Option<Vec<u8>>,
}

fn bits(f: &[bool]) -> Vec<u8> {
    f.iter().map(|&b| b as u8).collect()
}

pub fn enumerate(order: usize, framed: bool, arc: bool, format: ListFormat, max: usize) -> Result<Outcome> {
    capacity(order, max)?;
    let records: Vec<DiagramRecord> = if arc {
        enumerate_arc_diagrams(order, framed)
            .iter()
            .map(|a: &FramedArcDiagram| DiagramRecord {
                encoding: format_arc(a, framed),
                n: order,
                pairing: a.pairing(),
                framing: framed.then(|| bits(a.framing())),
            })
            .collect()
    } else {
        circle_diagrams(order, framed)
            .iter()
            .map(|d| DiagramRecord {
                encoding: format_circle(d, framed),
                n: order,
                pairing: d.pairing(),
                framing: framed.then(|| bits(d.framing())),
            })
            .collect()
    };
    let stdout = match format {
        ListFormat::Text => records.iter().map(|r| format!("{}\n", r.encoding)).collect(),
        ListFormat::Json => json(&records)?,
    };
    Ok(Outcome::plain(stdout))
}

#[derive(Serialize)]
struct DimsRow {
    #[serde(flatten)]
    row: DimensionRow,
    space: String,
    relations: String,
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<String>,
    fingerprint: String,
}

pub fn dims(
    orders: &str,
    space: &SpaceArgs,
    format: TableFormat,
    cache_dir: Option<&std::path::Path>,
    max: usize,
) -> Result<Outcome> {
    let orders = parse_orders(orders)?;
    let set = space.relation_set()?;
    let field = space.field()?;
    let model = space.model()?;
    let mut rows = Vec::new();
    let mut fingerprints = Vec::new();
    for &n in &orders {
        capacity(n, max)?;
        let row = match model {
            None => {
                let (q, _) = quotient_cached::<FramedChordDiagram>(cache_dir, n, space.framed, &set, field)?;
                let fp = q.fingerprint();
                DimsRow {
                    row: q.row(),
                    space: space_name::<FramedChordDiagram>(space.framed),
                    relations: set.describe(),
                    field: field.as_str().into(),
                    model: None,
                    fingerprint: fp,
                }
            }
            Some(m) => {
                let (qb, info) = restricted_quotient(n, &set, m, field)?;
                DimsRow {
                    row: DimensionRow {
                        n,
                        diagrams: qb.columns().len(),
                        relations: info.relations,
                        rank: info.rank,
                        dim: info.dim,
                    },
                    space: "circle-framed-realisable".into(),
                    relations: set.describe(),
                    field: field.as_str().into(),
                    model: Some(m.name().into()),
                    fingerprint: String::new(),
                }
            }
        };
        if !row.fingerprint.is_empty() {
            fingerprints.push(row.fingerprint.clone());
        }
        rows.push(row);
    }
    let stdout = match format {
        TableFormat::Json => json(&rows)?,
        TableFormat::Csv => {
            let mut s = String::from("n,diagrams,relations,rank,dim\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.row.n, r.row.diagrams, r.row.relations, r.row.rank, r.row.dim
                ));
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        expected: true,
        summary: None,
        fingerprints,
    })
}

fn relations_of<K: SurfaceDiagram>(order: usize, space: &SpaceArgs, format: ListFormat) -> Result<Outcome> {
    let set = space.relation_set()?;
    let columns = K::all(order, space.framed);
    let rels = relations_on(&columns, space.framed, &set);
    let fp = chordspace::relations::fingerprint(&space_name::<K>(space.framed), order, &rels, space.framed);
    let stdout = match format {
        ListFormat::Text => relation_file_text(&rels, space.framed),
        ListFormat::Json => json(&relation_records(&rels, space.framed))?,
    };
    Ok(Outcome {
        stdout,
        expected: true,
        summary: Some(format!("{} generators, fingerprint {fp}", rels.len())),
        fingerprints: vec![fp],
    })
}

pub fn relations(order: usize, space: &SpaceArgs, format: ListFormat, max: usize) -> Result<Outcome> {
    capacity(order, max)?;
    relations_of::<FramedChordDiagram>(order, space, format)
}

fn verdict<T: Serialize>(report: &T, holds: bool, expect: Expect, summary: String) -> Result<Outcome> {
    Ok(Outcome {
        stdout: json(report)?,
        expected: expect.met(holds),
        summary: Some(format!(
            "{summary}; verdict {}; expected {expect:?}",
            if holds { "holds" } else { "fails" }
        )),
        fingerprints: Vec::new(),
    })
}

pub fn check(cmd: &CheckCommand, max: usize) -> Result<Outcome> {
    match cmd {
        CheckCommand::PhiIso {
            schema_a,
            schema_b,
            order,
            field,
            expect,
        } => {
            capacity(*order, max)?;
            let r = check_phi_intertwine(&parse_schema(schema_a)?, &parse_schema(schema_b)?, *order, parse_field(field)?)?;
            let summary = format!(
                "phi-iso {} -> {} at n={}: ranks {}/{}, {} of {} images outside",
                r.schema_a, r.schema_b, r.n, r.rank_a, r.rank_b, r.outside, r.generators_checked
            );
            verdict(&r, r.holds, *expect, summary)
        }
        CheckCommand::WellDefined { orders, space, expect } => {
            let (a, b) = parse_pair(orders)?;
            capacity(a + b, max)?;
            let r = well_defined_check(a, b, space.framed, &space.relation_set()?, space.field()?)?;
            let summary = format!(
                "well-defined {} at ({a},{b}): {} failures over {} products",
                r.relations, r.counts.failures, r.counts.products
            );
            verdict(&r, r.holds(), *expect, summary)
        }
        CheckCommand::Commutativity {
            orders,
            space,
            surface,
            expect,
        } => {
            let (a, b) = parse_pair(orders)?;
            capacity(a + b, max)?;
            let surface = match surface {
                SurfaceArg::Arc => ProductSpace::Arc,
                SurfaceArg::Circle => ProductSpace::Circle,
            };
            let r = commutator_check(a, b, space.framed, &space.relation_set()?, space.field()?, surface)?;
            let expect = expect.unwrap_or(if space.framed { Expect::Any } else { Expect::Pass });
            let summary = format!(
                "commutativity on {} at ({a},{b}): {} of {} pairs commute{}",
                r.space,
                r.counts.commuting,
                r.counts.pairs,
                if r.convention_dependent { " (edge-0 convention)" } else { "" }
            );
            verdict(&r, r.counts.non_commuting == 0, expect, summary)
        }
        CheckCommand::Lemma4t {
            order,
            model,
            schema,
            expect,
        } => {
            capacity(*order, max)?;
            let r = lemma_4t_closure_check(*order, &parse_schema(schema)?, parse_model(model)?);
            let summary = format!(
                "lemma-4t at n={} ({} model): {} quadruples, {} violations",
                r.n,
                r.model.name(),
                r.quadruples,
                r.violations.len()
            );
            verdict(&r, r.holds(), *expect, summary)
        }
        CheckCommand::SchemaSearch { orders, field, expect } => {
            let orders = parse_orders(orders)?;
            for &n in &orders {
                capacity(n, max)?;
            }
            let r = schema_search(&orders, parse_field(field)?)?;
            let holds = r.orders.first().is_some_and(|o| !o.survivors.is_empty())
                && !r.stable_survivors.is_empty();
            let counts: Vec<String> = r
                .orders
                .iter()
                .map(|o| format!("n={}: {} survivors", o.n, o.survivors.len()))
                .collect();
            let summary = format!(
                "schema-search {}; {} stable survivors",
                counts.join(", "),
                r.stable_survivors.len()
            );
            verdict(&r, holds, *expect, summary)
        }
    }
}

pub fn render(diagram: Option<&str>, file: Option<&std::path::Path>, format: RenderFormat) -> Result<Outcome> {
    let inputs: Vec<String> = match (diagram, file) {
        (Some(d), None) => vec![d.to_string()],
        (None, Some(path)) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect(),
        _ => bail!("give exactly one of a diagram or --file"),
    };
    let mut out = String::new();
    for text in inputs {
        let d = parse_circle(&text)?;
        let piece = match format {
            RenderFormat::Dot => to_dot(&d),
            RenderFormat::Tikz => to_tikz(&d),
            RenderFormat::SvgViaDot => svg_via_dot(&to_dot(&d))?,
        };
        out.push_str(&piece);
    }
    Ok(Outcome::plain(out))
}

fn svg_via_dot(dot: &str) -> Result<String> {
    let mut child = Process::new("dot")
        .args(["-Kneato", "-n", "-Tsvg"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .map_err(|e| anyhow!("cannot run graphviz `dot`: {e}"))?;
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(dot.as_bytes())?;
    let output = child.wait_with_output()?;
    if !output.status.success() {
        bail!("graphviz `dot` exited with {}", output.status);
    }
    Ok(String::from_utf8(output.stdout)?)
}

#[derive(Serialize)]
struct WeightSpaceOut {
    n: usize,
    framed: bool,
    field: String,
    relations: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    model: Option<String>,
    dimension: usize,
    basis: Vec<String>,
    functionals: Vec<WeightTableFile>,
}

pub fn weights(cmd: &WeightsCommand, max: usize) -> Result<Outcome> {
    match cmd {
        WeightsCommand::Space { order, space } => {
            capacity(*order, max)?;
            let set = space.relation_set()?;
            let schema = set
                .four_t
                .clone()
                .ok_or_else(|| anyhow!("weight spaces need the 4t relation"))?;
            let model = space.model()?;
            let ws = weight_space(*order, space.framed || model.is_some(), &schema, set.one_t, space.field()?, model)?;
            let out = WeightSpaceOut {
                n: ws.n,
                framed: ws.framed,
                field: ws.field.as_str().into(),
                relations: set.describe(),
                model: model.map(|m| m.name().into()),
                dimension: ws.dimension(),
                basis: ws.basis.iter().map(|b| format_circle(b, ws.framed)).collect(),
                functionals: ws.functionals.iter().map(WeightTable::to_file).collect(),
            };
            Ok(Outcome::plain(json(&out)?))
        }
        WeightsCommand::Validate {
            table,
            schema,
            one_t,
            field,
        } => {
            let text = std::fs::read_to_string(table)
                .with_context(|| format!("reading {}", table.display()))?;
            let file: WeightTableFile = serde_json::from_str(&text)?;
            capacity(file.n, max)?;
            let t = WeightTable::from_file(&file)?;
            let r = validate(&t, &parse_schema(schema)?, *one_t, parse_field(field)?)?;
            let summary = format!(
                "validate n={}: {} of {} generators checked, {} violations",
                r.n,
                r.checked,
                r.generators,
                r.violations.len()
            );
            verdict(&r, r.passes(), Expect::Pass, summary)
        }
    }
}
