//! Exact linear algebra: coefficient fields, matrices, and k[x] Smith theory.

pub mod field;
pub mod matrix;
pub mod unipoly;

pub use field::{Field, FieldElement, DEFAULT_PRIME};
pub use matrix::{ExactMatrix, Rref};
pub use unipoly::{minimal_cover, CokerShape, SmithNormalForm, UniPoly, UniPolyMatrix};
