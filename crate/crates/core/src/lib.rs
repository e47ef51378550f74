//! q-analogs of graphs over F_q^v.
//!
//! The crate builds and checks q-ary graphs (vertices are the 1-subspaces of
//! F_q^v, edges a chosen set of 2-subspaces), the spreads and parameter
//! identities around q-analogs of divisible design graphs and Deza graphs,
//! small matrix groups acting on subspaces, and the complete computational
//! classification of the q-Deza graphs with parameters (6,2,1,0;2).
//!
//! Module map:
//!
//! * [`field`], [`space`], [`enumerate`]: finite fields, packed vectors,
//!   canonical subspaces, counting and canonical enumeration.
//! * [`graph`]: q-ary graphs, neighbourhoods, regularity, collapse.
//! * [`designs`]: spreads, q-DDG / q-Deza / q-SRG recognition and constructions.
//! * [`groups`]: matrix groups over F_q, orbits, stabilisers, the Singer example.
//! * [`hexagon`]: the split Cayley hexagon and the (6,2,1,0;2) classification sweep.
//! * [`io`]: text formats for line sets, spreads and matrices.

pub mod bits;
pub mod designs;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod graph;
pub mod groups;
pub mod hexagon;
pub mod io;
pub mod pg2;
pub mod space;

pub use enumerate::{gaussian_binomial, gaussian_bracket, PointTable, SubspaceEnumeration, SubspaceId};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec};
pub use graph::{ClassicalGraph, Neighborhood, QaryGraph, RegularityReport};
pub use space::{Ambient, Subspace, Vector};
