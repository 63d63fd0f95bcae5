//! Cochain complexes of graded free and presented modules: cones, shifts,
//! duality, cohomology, minimization, the generator-degree splitting, and
//! the edge truncations.

pub mod free_complex;
pub mod module_complex;

pub use free_complex::{
    cone, cone_triangle, split_projectives, BandCertificate, ChainMap, FreeComplex,
    SplitProjectives,
};
pub use module_complex::{
    cone_modules, soft_truncate, soft_truncate_free, top_truncate, ModuleChainMap, ModuleComplex,
};
