//! Graded modules: free frames, presentations, slices, truncation, graded
//! Hom, and torsion.

pub mod free;
pub mod hom;
pub mod presented;
pub mod slice;
pub mod torsion;
pub mod truncate;

pub use free::{FreeModule, GradedMap};
pub use presented::{
    adjoin_ring_relations, cokernel, image, kernel_mod_image, kernel_of_module_map,
    lift_over_quotient, syzygies_over_quotient, ModuleMap, PresentedModule,
};
pub use slice::{
    k_slice_matrix, slice_generators, slice_k_dimension, slice_value, KSliceModel,
    PidSliceModel, SliceValue,
};
pub use hom::{hom_graded, HomGraded};
pub use torsion::{torsion_submodule, TorsionSubmodule};
pub use truncate::{quotient_below, truncate_geq};
