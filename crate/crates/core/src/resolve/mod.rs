//! Free resolutions and derived Hom.
//!
//! [`banded`] constructs free resolutions of modules and bounded module
//! complexes whose truncation is certified by generator-degree bounds;
//! [`ext`] computes graded Ext by applying Hom into a module termwise to
//! such a resolution and taking cohomology.

pub mod banded;
pub mod ext;

pub use banded::{
    minimal_resolution, resolve, resolve_complex, BandedResolution, DegreeEscapeCertificate,
    MAX_RESOLUTION_WINDOW,
};
pub use ext::{ext_graded, ext_module, ext_value, hom_complex};
