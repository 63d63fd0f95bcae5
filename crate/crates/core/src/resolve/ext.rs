//! Graded Ext via free resolutions.
//!
//! `Hom(P, N)` of a complex of free modules `P` into a module `N` is the
//! module complex whose term in cohomological degree `j` is
//! `Hom(P^{-j}, N) = (+)_t N(g_t)` (one twisted copy of `N` per generator of
//! `P^{-j}`, `g_t` its degree) and whose differential precomposes with the
//! differential of `P`. Applying this to a resolution of `M` and taking
//! cohomology in degree `m` yields `Ext^m(M, N)` as a graded module; its
//! slices are vector spaces over a field base and finitely generated
//! univariate modules otherwise.
//!
//! A truncated resolution computes Ext correctly below the truncation
//! depth, so the resolution window is always kept at least two past the
//! requested cohomological degree.

use crate::complexes::{FreeComplex, ModuleComplex};
use crate::error::KernelError;
use crate::grmod::{
    slice_k_dimension, slice_value, FreeModule, GradedMap, ModuleMap, PresentedModule, SliceValue,
};
use crate::grring::{BaseClass, ModElem};

use super::banded::{plain_resolution, resolution_to_window};

/// The complex `Hom(P, N)`, materialized over the stored window of `P`.
/// Term `j` is `Hom(P^{-j}, N)`; the differential precomposes with the
/// differential of `P` (the sign conventionally attached to odd degrees does
/// not change kernels or images, so it is omitted).
pub fn hom_complex(p: &FreeComplex, n: &PresentedModule) -> Result<ModuleComplex, KernelError> {
    let ring = p.ring().clone();
    if !ring.same_ring(n.ring()) {
        return Err(KernelError::Unsupported {
            context: "Hom of a complex into a module over a different ring".to_string(),
        });
    }
    let lo = -p.hi();
    let hi = -p.lo();
    let mut terms: Vec<PresentedModule> = Vec::new();
    for j in lo..=hi {
        terms.push(hom_term(&p.term(-j), n));
    }
    let nr = n.gens().rank();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    for j in lo..hi {
        // Precompose with d: P^{-j-1} -> P^{-j}. The column for the source
        // generator (t, u) of Hom(P^{-j}, N) places the entry d[t][s] in
        // block s, row u of Hom(P^{-j-1}, N).
        let d = p.diff(-j - 1);
        let src = &terms[(j - lo) as usize];
        let tgt = &terms[(j - lo) as usize + 1];
        let mut cols: Vec<ModElem> = Vec::new();
        for t in 0..d.target().rank() {
            for u in 0..nr {
                let mut col = ModElem::zero(tgt.gens().rank());
                for s in 0..d.source().rank() {
                    let e = d.entry(t, s);
                    if !e.is_zero() {
                        col.comps[s * nr + u] = e.clone();
                    }
                }
                cols.push(col);
            }
        }
        let gm = GradedMap::new(src.gens().clone(), tgt.gens().clone(), cols)?;
        diffs.push(ModuleMap::new(src.clone(), tgt.clone(), gm)?);
    }
    ModuleComplex::new(ring, lo, terms, diffs)
}

/// `Hom(F, N)` for free `F`: a direct sum of copies of `N` twisted by the
/// generator degrees of `F`.
fn hom_term(f: &FreeModule, n: &PresentedModule) -> PresentedModule {
    let mut out = PresentedModule::free(FreeModule::new(f.ring().clone(), Vec::new()));
    for t in 0..f.rank() {
        out = out.direct_sum(&n.twist(f.degree(t)));
    }
    out
}

/// `Hom(P, N)` for a resolution `P` of `M` reaching `window` steps down.
/// Cohomology of the result is `Ext` in degrees up to `window - 2`. Over a
/// general base the resolution is uncertified (covers are not minimal), but
/// its interior cohomology is still exact.
pub(crate) fn ext_complex(
    m: &PresentedModule,
    n: &PresentedModule,
    window: usize,
) -> Result<ModuleComplex, KernelError> {
    let x = ModuleComplex::concentrated(m.clone(), 0);
    let p = match m.ring().base_class() {
        BaseClass::General => plain_resolution(&x, window)?,
        _ => resolution_to_window(&x, window)?.complex().clone(),
    };
    hom_complex(&p, n)
}

/// `Ext^deg(M, N)` as a presented graded module, computed from a resolution
/// of `M` truncated at least two positions past `deg`.
pub fn ext_module(
    m: &PresentedModule,
    n: &PresentedModule,
    deg: usize,
    window: Option<usize>,
) -> Result<PresentedModule, KernelError> {
    let k = window.unwrap_or(0).max(deg + 2);
    let h = ext_complex(m, n, k)?;
    h.cohomology(deg as i64)
}

/// The internal-degree-`e` slice of `Ext^deg(M, N)`: a dimension over a
/// field base, a free-plus-torsion shape over a univariate one.
pub fn ext_value(
    m: &PresentedModule,
    n: &PresentedModule,
    deg: usize,
    e: i64,
) -> Result<SliceValue, KernelError> {
    let ext = ext_module(m, n, deg, None)?;
    slice_value(&ext, e)
}

/// The k-dimension of `Ext^deg(M, N)_e`; errors when the slice is not
/// finite-dimensional over k.
pub fn ext_graded(
    m: &PresentedModule,
    n: &PresentedModule,
    deg: usize,
    e: i64,
) -> Result<usize, KernelError> {
    let ext = ext_module(m, n, deg, None)?;
    slice_k_dimension(&ext, e)?.ok_or(KernelError::UnboundedSlice { degree: e })
}
