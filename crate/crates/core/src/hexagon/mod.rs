//! The split Cayley hexagon H(2) in PG(5, 2), its hyperplane sections and
//! the exhaustive search for other 63-line (6,2,1,0;2)-Deza graphs.

mod badex;
mod construct;
mod couples;
mod incidence;
mod iso;
mod pipeline;
mod section;
mod singer;

pub use badex::{
    badex_case, badex_orbit, badex_orbit_z, badex_stabilizer, build_badex, single_line_solids, BadexConfig,
    BadexOrbit, Mask5, ZReport,
};
pub use construct::build_split_cayley_hexagon;
pub use couples::{
    check_couple, extend_and_identify, good_lines, CoupleConfig, CoupleKey, CoupleSetup, Extension,
};
pub use incidence::{
    distance_censuses, is_generalized_hexagon, pi_plane, regular_embedding_checks, EmbeddingReport,
    IncidenceGeometry,
};
pub use iso::{automorphisms, collineations, find_collineation};
pub use pipeline::{
    run_fast, run_full, section_summary, Checkpoint, EqualityCase, FastReport, FullOptions, FullReport,
    Progress, ProgressEvent, SectionSummary,
};
pub use section::{
    hyperplane_section, hyperplanes, section_case, solid_census, solids_of, SectionCase, SectionReport, SolidCount,
};
pub use singer::{singer_deza_graphs, singer_example, SingerExample, SingerReport};
