//! Framed chord diagrams and their quotient spaces in exact arithmetic.
//!
//! The crate enumerates chord diagrams up to rotation, generates 1T and
//! (framed) 4T relations, computes quotient dimensions and bases over Q or
//! GF(2), and runs structural checks on the results: the sign involution
//! between framed relation families, well-definedness and commutativity of
//! diagram products, closure of realisable diagrams under 4T, and duality
//! between quotients and weight systems.

pub mod algebra;
pub mod cache;
pub mod diagram;
pub mod encoding;
pub mod error;
pub mod linalg;
pub mod realisability;
pub mod relations;
pub mod render;
pub mod space;
pub mod vector;
pub mod weights;

pub use algebra::{
    check_phi_intertwine, commutator_check, multiply_arc, multiply_circle, named_schema, phi,
    schema_search, starred_schema, well_defined_check, GradedElement, ProductSpace,
};
pub use diagram::{
    enumerate_arc_diagrams, enumerate_chord_diagrams, enumerate_framed_diagrams, ChordDiagram,
    FramedArcDiagram, FramedChordDiagram,
};
pub use encoding::{format_arc, format_circle, parse_arc, parse_circle, EncodingWord};
pub use error::{Error, Result};
pub use linalg::{rank, FieldTag, QuotientBasis};
pub use realisability::{
    lemma_4t_closure_check, realisable, realisable_set, restricted_quotient_dim, Realisability,
    RealisabilityModel,
};
pub use relations::{
    generate_1t, generate_4t, schema_space, RelationSet, RelationVector, SignSchema,
};
pub use space::{circle_dim, circle_quotient, arc_quotient, Quotient};
pub use vector::{DiagramKey, DiagramVector, Q};
pub use weights::{forget_framing, validate, weight_space, WeightSpace, WeightTable};
