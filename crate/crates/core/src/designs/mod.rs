//! Spreads, parameter identities, recognisers and constructions for q-DDGs,
//! q-Deza graphs and q-SRGs.

mod classify;
mod construct;
mod params;
mod spread;

pub use classify::{
    classical_class_values, classical_profile, classify_ddg, classify_deza, classify_srg, ClassicalProfile,
    DezaReport, SrgKind, SrgRecognition,
};
pub(crate) use classify::nullspace;
pub use construct::{extend_by_spread, spread_union_complete, standard_symplectic_form, symplectic_srg};
pub use params::{
    classical_ddg_identity, classical_deza_count, ddg_parameter_identity, deza_counts, deza_parameter_families,
    DdgParams, DezaCounts, DezaParams, FamilyTag,
};
pub use spread::{field_reduction_spread, validate_spread, Spread};
