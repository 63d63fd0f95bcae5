//! Exact computational kernel for weighted-graded commutative rings:
//! Groebner bases, graded modules and complexes, banded free resolutions with
//! degree-escape certificates, local cohomology, the stable (singularity)
//! embedding, graded matrix factorizations, and certified semiorthogonal
//! decomposition reports.
//!
//! Everything is computed over exact coefficients (arbitrary-precision
//! rationals or a prime field) and is bit-for-bit deterministic: no hash-order
//! iteration, no wall-clock input, and concurrent fan-out writes into
//! pre-indexed slots.

pub mod complexes;
pub mod error;
pub mod grmod;
pub mod grring;
pub mod orlov;
pub mod resolve;
pub mod scalars;

pub use error::KernelError;

/// Crate result alias used throughout the kernel.
pub type Result<T> = std::result::Result<T, KernelError>;
