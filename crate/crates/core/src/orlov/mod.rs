//! Theorem-level functors and certificates over graded Gorenstein rings:
//! Gorenstein parameters, local cohomology and truncated derived global
//! sections, the stable embedding into complexes orthogonal to high twists,
//! stable Hom, and the semiorthogonal-decomposition verifier.

pub mod bi;
pub mod gorenstein;
pub mod local;

pub use bi::{b_functor, stable_hom, stable_hom_at, BFunctorData};
pub use gorenstein::{gorenstein_parameters, GorensteinData};
pub use local::{
    gamma_geq, local_cohomology, local_cohomology_cech, GammaData, LcMethod,
    LocalCohomologyTable, MAX_CECH_EXPONENT,
};
