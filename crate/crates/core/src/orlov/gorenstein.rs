//! Gorenstein parameters of a weighted-graded ring.
//!
//! `A` is graded Gorenstein with parameters `(n, a)` when `Ext^j(A_0, A)`
//! vanishes for every `j != n` and `Ext^n(A_0, A)` is isomorphic to
//! `A_0(a)` as a graded module, where `A_0 = A / (positive-weight
//! variables)`. The scan certifies both halves: uniqueness of the nonzero
//! cohomological degree inside the requested window, and the twist via an
//! explicit isomorphism `A_0(a) -> Ext^n` that is checked to be well
//! defined, surjective, and injective. Nothing here requires slices, so the
//! scan works over any base, including rings whose degree-zero part has
//! several variables.

use crate::error::KernelError;
use crate::grmod::{cokernel, kernel_of_module_map, FreeModule, GradedMap, ModuleMap, PresentedModule};
use crate::grring::{GradedRing, ModElem, Monomial, Poly};
use crate::resolve::ext::ext_complex;

/// Certified Gorenstein parameters: `Ext^n(A_0, A) = A_0(a)`, with every
/// other `Ext^j` verified zero for `j <= verified_window`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GorensteinData {
    pub n: usize,
    pub a: i64,
    pub verified_window: usize,
}

/// `A_0` presented as the quotient of `A` by its positive-weight variables.
pub fn base_module(ring: &GradedRing) -> PresentedModule {
    let gens: Vec<Poly> = ring
        .positive_weight_vars()
        .iter()
        .map(|&v| ring.var(v).poly().clone())
        .collect();
    PresentedModule::cyclic_quotient(ring, &gens)
        .expect("variables are homogeneous generators")
}

/// Scans `Ext^j(A_0, A)` for `j <= j_max` and certifies Gorenstein
/// parameters. Fails with the list of nonzero degrees when there is not
/// exactly one, and with a certificate violation when the single nonzero
/// Ext is not free of rank one over `A_0`.
pub fn gorenstein_parameters(
    ring: &GradedRing,
    j_max: usize,
) -> Result<GorensteinData, KernelError> {
    let a0 = base_module(ring);
    let amod = PresentedModule::ring_module(ring);
    let hom = ext_complex(&a0, &amod, j_max + 2)?;

    let mut nonzero: Vec<usize> = Vec::new();
    let mut witness: Option<(usize, PresentedModule)> = None;
    for j in 0..=j_max {
        let e = hom.cohomology(j as i64)?;
        if !e.is_zero_module()? {
            nonzero.push(j);
            witness = Some((j, e));
        }
    }
    if nonzero.len() != 1 {
        return Err(KernelError::NotGorensteinInWindow { j_max, nonzero });
    }
    let (n, ext) = witness.expect("exactly one nonzero degree recorded");

    // Smallest-degree generator that generates all of Ext^n by itself.
    let mut order: Vec<usize> = (0..ext.gens().rank()).collect();
    order.sort_by_key(|&t| (ext.gens().degree(t), t));
    let mut pick: Option<usize> = None;
    for &t in &order {
        if generates_alone(&ext, t)? {
            pick = Some(t);
            break;
        }
    }
    let Some(t) = pick else {
        return Err(KernelError::CertificateViolation {
            reason: format!(
                "Ext^{n}(A0, A) is not cyclic, so it cannot be free of rank one over the \
                 degree-zero subring"
            ),
        });
    };
    let d = ext.gens().degree(t);
    let a = -d;

    // Certified isomorphism A_0(a) -> Ext^n sending 1 to the generator:
    // well defined (the irrelevant ideal kills the generator), surjective,
    // and injective.
    let q = base_module(ring).twist(-d);
    let col = unit_column(ring, ext.gens().rank(), t);
    let gm = GradedMap::new(q.gens().clone(), ext.gens().clone(), vec![col])?;
    let psi = ModuleMap::new(q, ext.clone(), gm).map_err(|e| KernelError::CertificateViolation {
        reason: format!(
            "the generator of Ext^{n}(A0, A) is not killed by the irrelevant ideal: {e}"
        ),
    })?;
    if !cokernel(&psi).is_zero_module()? {
        return Err(KernelError::CertificateViolation {
            reason: format!("the chosen generator fails to span Ext^{n}(A0, A)"),
        });
    }
    let (ker, _) = kernel_of_module_map(&psi)?;
    if !ker.is_zero_module()? {
        return Err(KernelError::CertificateViolation {
            reason: format!(
                "Ext^{n}(A0, A) is cyclic but not free of rank one over the degree-zero \
                 subring: the comparison map from A0({a}) has a kernel"
            ),
        });
    }

    Ok(GorensteinData { n, a, verified_window: j_max })
}

/// Whether the single generator `t` spans all of `m`.
fn generates_alone(m: &PresentedModule, t: usize) -> Result<bool, KernelError> {
    let ring = m.ring().clone();
    let src = FreeModule::new(ring.clone(), vec![m.gens().degree(t)]);
    let col = unit_column(&ring, m.gens().rank(), t);
    let gm = GradedMap::new(src.clone(), m.gens().clone(), vec![col])?;
    let f = ModuleMap::new(PresentedModule::free(src), m.clone(), gm)?;
    cokernel(&f).is_zero_module()
}

fn unit_column(ring: &GradedRing, rank: usize, t: usize) -> ModElem {
    let mut col = ModElem::zero(rank);
    col.comps[t] = Poly::term(Monomial::one(ring.nvars()), ring.field().one());
    col
}
