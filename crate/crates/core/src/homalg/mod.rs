//! Chain complexes of presented modules, truncated free resolutions,
//! Tor, mapping fibers, chain-map lifting, and long-exact-sequence
//! verification.

pub mod algebra;
pub mod complex;
pub mod homology;
pub mod les;
pub mod resolution;

pub use algebra::{AlgElem, AlgMatrix, BasedAlgebra, PresentedModule};
pub use complex::{mapping_cone, mapping_fiber, ChainComplex, ChainMap, FiberTriple};
pub use homology::{
    homology, homology_data, induced_is_iso, induced_map, HomologyData, HomologyGroup,
    HomologyResult,
};
pub use les::{exact_at, les_exactness, LesReport};
pub use resolution::{
    free_resolution, lift_chain_map, lifts_to_chain_map, tor, Resolution,
    DEFAULT_RESOLUTION_DEPTH,
};
