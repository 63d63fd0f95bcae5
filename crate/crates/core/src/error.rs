//! Error type shared across the kernel.
//!
//! Variants fall into four classes, and the CLI maps each class to a fixed
//! process exit code: input/parse errors (1), precondition violations (2),
//! certificate violations (3), resource caps (4). [`KernelError::exit_code`]
//! is the single source of truth for that mapping.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    // ---- input / parse ----
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    // ---- preconditions ----
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("variable {name} has negative weight {weight}")]
    NegativeWeight { name: String, weight: i64 },

    #[error("modulus {p} is not prime")]
    NonPrimeModulus { p: u64 },

    #[error("relation {index} is not homogeneous: {detail}")]
    InhomogeneousRelation { index: usize, detail: String },

    #[error("map entry at row {row}, column {col} must be homogeneous of degree {expected}: {detail}")]
    EntryDegreeMismatch { row: usize, col: usize, expected: i64, detail: String },

    #[error("element is not in the image of the given map")]
    NotInImage,

    #[error("degree-{degree} slice is not finite-dimensional over the coefficient field")]
    UnboundedSlice { degree: i64 },

    #[error("differential composite at index {index} is nonzero; not a complex")]
    NotAComplex { index: i64 },

    #[error("not a chain map: square at index {index} does not commute")]
    NotChainMap { index: i64 },

    #[error("index {index} is outside the represented window [{lo}, {hi}] and no certificate covers it")]
    WindowExceeded { index: i64, lo: i64, hi: i64 },

    #[error("complex lacks the band certificate required for {operation}")]
    MissingBandCertificate { operation: String },

    #[error("base ring class {base} is not supported by {operation}: {reason}")]
    UnsupportedBase { base: String, operation: String, reason: String },

    #[error("Ext^j(A0, A) nonzero in cohomological degrees {nonzero:?} for j <= {j_max}; Gorenstein parameters need exactly one nonzero degree carrying a free rank-1 module")]
    NotGorensteinInWindow { j_max: usize, nonzero: Vec<usize> },

    #[error("Cech computation did not stabilize at denominator exponent {exponent} (degree window {lo}..={hi})")]
    CechUnstable { exponent: usize, lo: i64, hi: i64 },

    #[error("resolution is not 2-periodic within {steps} syzygy steps")]
    PeriodicityNotDetected { steps: usize },

    #[error("unsupported operation: {context}")]
    Unsupported { context: String },

    // ---- certificate violations ----
    #[error("certificate violation: {reason}")]
    CertificateViolation { reason: String },

    #[error("matrix factorization identity {identity} fails at row {row}, column {col}")]
    MFIdentityViolation { identity: String, row: usize, col: usize },

    // ---- resource caps ----
    #[error("resource cap exceeded: {what} passed {limit}")]
    ResourceCapExceeded { what: String, limit: usize },

    #[error("torsion saturation did not stabilize within exponent cap {cap}")]
    SaturationCapExceeded { cap: usize },
}

impl KernelError {
    /// Process exit code class for the CLI: 1 parse, 2 precondition,
    /// 3 certificate violation, 4 resource cap.
    pub fn exit_code(&self) -> i32 {
        use KernelError::*;
        match self {
            Parse { .. } => 1,
            CertificateViolation { .. } | MFIdentityViolation { .. } => 3,
            ResourceCapExceeded { .. } | SaturationCapExceeded { .. } => 4,
            _ => 2,
        }
    }
}
