//! Torsion with respect to the irrelevant ideal A_{>=1}.
//!
//! The torsion submodule is the union of the colon submodules
//! S_p = (0 : (A_{>=1})^p), computed by iterating S_{p+1} = (S_p : A_{>=1})
//! until the chain stabilizes. Stabilization is detected by comparing the
//! reduced Groebner bases of [S_p | relations | I-columns], which are
//! canonical; the first p with S_{p+1} = S_p is reported as the saturation
//! exponent. The chain must stabilize for a noetherian module; the iteration
//! cap exists to turn a runaway computation into an error instead of a hang.

use crate::error::KernelError;
use crate::grmod::free::FreeModule;
use crate::grmod::presented::{
    adjoin_ring_relations, kernel_of_module_map, ModuleMap, PresentedModule,
};
use crate::grring::{groebner_module, ModElem};

const SATURATION_CAP: usize = 64;

#[derive(Debug, Clone)]
pub struct TorsionSubmodule {
    pub module: PresentedModule,
    pub inclusion: ModuleMap,
    /// Smallest p with (0 : (A_{>=1})^p) equal to the full torsion.
    pub exponent: usize,
}

/// Canonical form of the submodule of M's frame spanned by `cols`, the
/// module relations, and the ring relations.
fn submodule_canonical(
    module: &PresentedModule,
    cols: &[ModElem],
) -> Result<Vec<ModElem>, KernelError> {
    let ring = module.ring();
    let rank = module.gens().rank();
    let mut inputs = cols.to_vec();
    inputs.extend_from_slice(module.relations().cols());
    let adjoined = adjoin_ring_relations(ring, rank, &inputs);
    let gb = groebner_module(ring.order(), rank, &adjoined)?;
    Ok(gb.elements().to_vec())
}

/// One colon step (S : A_{>=1}) inside M: the kernel of
/// m -> (x_v * m)_v into copies of M/S twisted by the weights.
fn colon_step(
    module: &PresentedModule,
    s_cols: &[ModElem],
    s_degs: &[i64],
) -> Result<(Vec<ModElem>, Vec<i64>), KernelError> {
    let ring = module.ring().clone();
    let positive = ring.positive_weight_vars();
    // Quotient M/S.
    let mut rel_cols = module.relations().cols().to_vec();
    rel_cols.extend_from_slice(s_cols);
    let mut rel_degs = module.relations().source().degrees().to_vec();
    rel_degs.extend_from_slice(s_degs);
    let rel_src = FreeModule::new(ring.clone(), rel_degs);
    let rel = crate::grmod::free::GradedMap::new(rel_src, module.gens().clone(), rel_cols)?;
    let quotient = PresentedModule::new(module.gens().clone(), rel);

    // Target: direct sum over positive-weight variables of (M/S)(w_v).
    let mut target: Option<PresentedModule> = None;
    for &v in &positive {
        let t = quotient.twist(ring.weights()[v]);
        target = Some(match target {
            None => t,
            Some(acc) => acc.direct_sum(&t),
        });
    }
    let target = match target {
        Some(t) => t,
        None => {
            // No positive-weight variables: A_{>=1} = 0 and everything is
            // torsion.
            let gens = all_generators(module);
            let degs = module.gens().degrees().to_vec();
            return Ok((gens, degs));
        }
    };

    let src_free = PresentedModule::new(module.gens().clone(), module.relations().clone());
    let mut cols = Vec::with_capacity(module.gens().rank());
    let order = ring.order();
    let one = ring.field().one();
    for t in 0..module.gens().rank() {
        let mut comps = Vec::new();
        for &v in &positive {
            let mut block = ModElem::zero(module.gens().rank());
            let xv = crate::grring::Monomial::var(ring.nvars(), v);
            block.comps[t] = crate::grring::Poly::term(xv, one.clone());
            comps.extend(block.comps);
        }
        let _ = order;
        cols.push(ModElem::from_comps(comps));
    }
    let map =
        crate::grmod::free::GradedMap::new(module.gens().clone(), target.gens().clone(), cols)?;
    let f = ModuleMap::new_unchecked(src_free, target, map);
    let (kernel, incl) = kernel_of_module_map(&f)?;
    Ok((incl.map().cols().to_vec(), kernel.gens().degrees().to_vec()))
}

fn all_generators(module: &PresentedModule) -> Vec<ModElem> {
    let ring = module.ring();
    let one = ring.field().one();
    (0..module.gens().rank())
        .map(|t| {
            let mut e = ModElem::zero(module.gens().rank());
            e.comps[t] =
                crate::grring::Poly::term(crate::grring::Monomial::one(ring.nvars()), one.clone());
            e
        })
        .collect()
}

/// The A_{>=1}-torsion submodule of M, presented, with its inclusion and the
/// saturation exponent.
pub fn torsion_submodule(module: &PresentedModule) -> Result<TorsionSubmodule, KernelError> {
    let mut cols: Vec<ModElem> = Vec::new();
    let mut degs: Vec<i64> = Vec::new();
    let mut canon = submodule_canonical(module, &cols)?;
    let mut exponent = 0usize;
    for p in 1..=SATURATION_CAP {
        let (next_cols, next_degs) = colon_step(module, &cols, &degs)?;
        let next_canon = submodule_canonical(module, &next_cols)?;
        if next_canon == canon {
            exponent = p - 1;
            break;
        }
        cols = next_cols;
        degs = next_degs;
        canon = next_canon;
        if p == SATURATION_CAP {
            return Err(KernelError::SaturationCapExceeded { cap: SATURATION_CAP });
        }
        exponent = p;
    }
    // Present the stabilized submodule via its image in M.
    let frame = FreeModule::new(module.ring().clone(), degs);
    let free_src = PresentedModule::free(frame.clone());
    let map = crate::grmod::free::GradedMap::new(frame, module.gens().clone(), cols)?;
    let f = ModuleMap::new_unchecked(free_src, module.clone(), map);
    let (torsion, inclusion) = crate::grmod::presented::image(&f)?;
    Ok(TorsionSubmodule { module: torsion, inclusion, exponent })
}
