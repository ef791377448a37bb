use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use chordspace::realisability::RealisabilityModel;
use chordspace::relations::{RelationSet, SchemaFile};
use chordspace::{named_schema, FieldTag, SignSchema};

#[derive(Parser, Debug)]
#[command(name = "chordspace", version, about = "Framed chord diagrams, 4T quotients and weight systems")]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Largest order any command will accept.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_order: usize,

    /// Write a run manifest (parameters, fingerprints, timing, digest) here.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List canonical diagrams of one order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        framed: bool,
        /// Arc diagrams (on a line) instead of circle diagrams.
        #[arg(long)]
        arc: bool,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Quotient dimensions.
    Dims {
        /// Orders, e.g. `3`, `0,1,2` or `0-5`.
        #[arg(long, default_value = "0")]
        order: String,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long, env = "CHORDSPACE_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Print the relation generators of one order.
    Relations {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Run a structural check and exit according to its verdict.
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Draw a circle diagram.
    Render {
        /// Diagram encoding, e.g. `ABAB|01`.
        diagram: Option<String>,
        /// Read encodings (one per line) from a file instead.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Dot)]
        format: RenderFormat,
    },
    /// Weight systems: dual bases and validation of tables.
    Weights {
        #[command(subcommand)]
        command: WeightsCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Does phi carry the relation span of schema A onto that of schema B?
    PhiIso {
        #[arg(long, default_value = "uniform")]
        schema_a: String,
        #[arg(long, default_value = "uniform")]
        schema_b: String,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value_t = Expect::Pass)]
        expect: Expect,
    },
    /// Independence of circle products from the break points.
    WellDefined {
        /// Order pair `a,b`.
        #[arg(long)]
        orders: String,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = Expect::Pass)]
        expect: Expect,
    },
    /// Commutators of products modulo relations.
    Commutativity {
        #[arg(long)]
        orders: String,
        #[command(flatten)]
        space: SpaceArgs,
        /// Product on circle diagrams or on arc diagrams.
        #[arg(long, value_enum, default_value_t = SurfaceArg::Circle)]
        surface: SurfaceArg,
        /// Defaults to `any` for framed spaces, `pass` otherwise.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// All-or-none realisability of 4T quadruples.
    Lemma4t {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "single-class")]
        model: String,
        #[arg(long, default_value = "uniform")]
        schema: String,
        #[arg(long, value_enum, default_value_t = Expect::Pass)]
        expect: Expect,
    },
    /// Search all sign schemas for spans intertwined by phi.
    SchemaSearch {
        #[arg(long, default_value = "2,3")]
        orders: String,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value_t = Expect::Pass)]
        expect: Expect,
    },
}

#[derive(Subcommand, Debug)]
pub enum WeightsCommand {
    /// Basis of weight systems dual to the quotient basis.
    Space {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Evaluate a weight table on every relation generator.
    Validate {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, default_value = "uniform")]
        schema: String,
        /// Also check the 1T relation.
        #[arg(long)]
        one_t: bool,
        #[arg(long, default_value = "q")]
        field: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    #[arg(long)]
    pub framed: bool,
    /// Comma list of `4t`, `1t`, or `none`.
    #[arg(long, default_value = "4t")]
    pub relations: String,
    /// `uniform`, `starred`, `schema-XYZ`, or a schema JSON file.
    #[arg(long, default_value = "uniform")]
    pub schema: String,
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Realisability model (`trivial`, `single-class`, or a JSON config file);
    /// restricts to realisable framed diagrams.
    #[arg(long)]
    pub model: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Tikz,
    SvgViaDot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceArg {
    Arc,
    Circle,
}

/// Expected verdict of a check.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Fail,
    Any,
}

impl Expect {
    pub fn met(self, holds: bool) -> bool {
        match self {
            Expect::Pass => holds,
            Expect::Fail => !holds,
            Expect::Any => true,
        }
    }
}

pub fn parse_schema(s: &str) -> Result<SignSchema> {
    if let Some(schema) = named_schema(s) {
        return Ok(schema);
    }
    let text = std::fs::read_to_string(s).with_context(|| format!("unknown schema {s:?}"))?;
    let file: SchemaFile = serde_json::from_str(&text)?;
    Ok(SignSchema::from_file(&file)?)
}

pub fn parse_model(s: &str) -> Result<RealisabilityModel> {
    if let Ok(m) = s.parse::<RealisabilityModel>() {
        return Ok(m);
    }
    let text = std::fs::read_to_string(s).with_context(|| format!("unknown model {s:?}"))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn parse_field(s: &str) -> Result<FieldTag> {
    Ok(s.parse::<FieldTag>()?)
}

impl SpaceArgs {
    pub fn relation_set(&self) -> Result<RelationSet> {
        let mut set = RelationSet::none();
        for part in self.relations.split(',').map(str::trim) {
            match part.to_ascii_lowercase().as_str() {
                "4t" => set.four_t = Some(parse_schema(&self.schema)?),
                "1t" => set.one_t = true,
                "none" | "" => {}
                other => bail!("unknown relation family {other:?}"),
            }
        }
        Ok(set)
    }

    pub fn field(&self) -> Result<FieldTag> {
        parse_field(&self.field)
    }

    pub fn model(&self) -> Result<Option<RealisabilityModel>> {
        self.model.as_deref().map(parse_model).transpose()
    }
}

/// `3`, `0,2,4`, `0-5`.
pub fn parse_orders(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once('-') {
            let a: usize = a.parse().map_err(|_| anyhow!("bad order {part:?}"))?;
            let b: usize = b.parse().map_err(|_| anyhow!("bad order {part:?}"))?;
            if a > b {
                bail!("empty order range {part:?}");
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| anyhow!("bad order {part:?}"))?);
        }
    }
    Ok(out)
}

pub fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let v = parse_orders(s)?;
    match v.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => bail!("expected an order pair `a,b`, got {s:?}"),
    }
}
