//! Free resolutions with controlled generator degrees.
//!
//! A banded resolution of a bounded complex of modules `X` is a complex of
//! free modules `P` together with augmentation maps `P^n -> X^n` forming a
//! termwise surjective quasi-isomorphism. `P` is built one term at a time,
//! descending from the top of the window: at each position the next term is
//! a minimal free cover of the pullback
//!
//!   C^n = ker( X^n (+) P^{n+1} -> X^{n+1} (+) P^{n+2} ),
//!   (x, f) |-> (d_X(x) - aug(f), d_P(f)),
//!
//! whose elements are pairs that agree under the augmentation and are cycles
//! in the already-built part. Below the window of `X` the step degenerates
//! to the classical syzygy step `C^n = ker(P^{n+1} ->> C^{n+1})`.
//!
//! Minimal covers are chosen slicewise: the kernel is reduced modulo the
//! positive-degree part of the ring and generators are read off per degree,
//! as a vector-space basis when the degree-zero part of the ring is the
//! ground field and as a Smith-normal-form generating set when it is a
//! univariate polynomial ring. In the second case the construction insists
//! that a kernel slice in the lowest persisting generator degree split off
//! freely; a torsion generator there breaks the degree-escape bound and is
//! reported as a certificate violation rather than silently accepted.
//!
//! Because minimal covers never introduce generators below the degrees
//! already present, the minimum generator degree of the terms is
//! non-increasing as the construction descends, and strictly increasing
//! (every step over a field, every other step over a univariate base) once
//! the construction is below the input window. That monotonicity is what
//! makes the truncated output honest: the omitted tail below the stored
//! window only contains generators in degrees at least the bound recorded in
//! the band certificate, and the degree-escape certificate tabulates, for
//! each internal degree `i`, a homological index past which every generator
//! has degree at least `i`.

use std::collections::{BTreeMap, BTreeSet};

use crate::complexes::{BandCertificate, FreeComplex, ModuleComplex};
use crate::error::KernelError;
use crate::grmod::{
    kernel_of_module_map, FreeModule, GradedMap, KSliceModel, ModuleMap, PidSliceModel,
    PresentedModule,
};
use crate::grring::{BaseClass, Monomial, ModElem, Poly};

/// Hard ceiling on automatic window extension while chasing a degree-escape
/// target that the resolution keeps failing to realize.
pub const MAX_RESOLUTION_WINDOW: usize = 1024;

/// Table certifying where generator degrees escape past each threshold.
///
/// For each internal degree `i` up to `target`, `escape_index(i)` is a
/// homological index `k_i` such that every term `P^{-k}` with `k >= k_i` has
/// all generator degrees `>= i`. For finite resolutions the table extends
/// past `target` (everything escapes beyond the last nonzero term); for
/// truncated ones thresholds above `target` are not certified.
#[derive(Debug, Clone)]
pub struct DegreeEscapeCertificate {
    entries: BTreeMap<i64, usize>,
    target: i64,
    beyond: Option<usize>,
}

impl DegreeEscapeCertificate {
    /// Largest internal degree the table certifies.
    pub fn target(&self) -> i64 {
        self.target
    }

    /// The tabulated thresholds, degree -> first escaping homological index.
    pub fn entries(&self) -> &BTreeMap<i64, usize> {
        &self.entries
    }

    /// Smallest `k` such that every generator of every `P^{-k'}`, `k' >= k`,
    /// has degree at least `i`; `None` when `i` exceeds the certified range.
    pub fn escape_index(&self, i: i64) -> Option<usize> {
        if i > self.target {
            return self.beyond;
        }
        Some(self.entries.get(&i).copied().unwrap_or(0))
    }
}

/// A free complex quasi-isomorphic to a bounded module complex, with
/// termwise surjective augmentations and a degree-escape certificate.
#[derive(Debug, Clone)]
pub struct BandedResolution {
    complex: FreeComplex,
    target: ModuleComplex,
    augmentations: BTreeMap<i64, ModuleMap>,
    certificate: DegreeEscapeCertificate,
    finite: bool,
}

/// One constructed position: the free term, its differential into the term
/// one position up, and its augmentation into the input complex.
struct Step {
    term: FreeModule,
    diff: GradedMap,
    aug: ModuleMap,
}

impl BandedResolution {
    /// The free complex. Banded (band certificate present) unless the
    /// construction terminated with a zero kernel.
    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    /// The resolved complex.
    pub fn target(&self) -> &ModuleComplex {
        &self.target
    }

    /// Augmentation `P^n -> X^n`, present for window positions of the input.
    pub fn augmentation(&self, n: i64) -> Option<&ModuleMap> {
        self.augmentations.get(&n)
    }

    pub fn certificate(&self) -> &DegreeEscapeCertificate {
        &self.certificate
    }

    /// True when the resolution terminated: the complex is the whole
    /// resolution and carries no band certificate.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// Re-derives every certified claim from the raw data: certificate
    /// entries against actual generator degrees, monotonicity and
    /// strictness of generator minima below the input window, the band
    /// bound, and commutation of the augmentations with the differentials.
    pub fn verify(&self) -> Result<(), KernelError> {
        let p = &self.complex;
        let lo_x = self.target.lo();
        let kmax = (-p.lo()).max(0);
        let min_at = |pos: i64| -> Option<i64> { min_degree(&p.term(pos)) };

        for (&i, &k) in &self.certificate.entries {
            for kk in k as i64..=kmax {
                if let Some(m) = min_at(-kk) {
                    if m < i {
                        return Err(KernelError::CertificateViolation {
                            reason: format!(
                                "degree-escape table claims index {k} for degree {i}, but \
                                 P^{j} has a generator in degree {m}",
                                j = -kk
                            ),
                        });
                    }
                }
            }
        }
        if let Some(b) = self.certificate.beyond {
            if !self.finite {
                return Err(KernelError::CertificateViolation {
                    reason: format!(
                        "certificate closes the table at index {b} but the resolution is \
                         truncated"
                    ),
                });
            }
        }

        let pid = matches!(p.ring().base_class(), BaseClass::UnivariatePid { .. });
        for pos in p.lo()..p.hi() {
            if pos > lo_x - 1 {
                continue;
            }
            let (a, b) = (min_at(pos), min_at(pos + 1));
            let ok = match (a, b) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(x), Some(y)) => x >= y,
            };
            if !ok {
                return Err(KernelError::CertificateViolation {
                    reason: format!(
                        "generator minimum decreases from position {} to {} below the \
                         input window",
                        pos + 1,
                        pos
                    ),
                });
            }
            let strict = if pid {
                pos <= lo_x - 2 && {
                    let c = min_at(pos + 2);
                    match (a, c) {
                        (None, _) => true,
                        (Some(_), None) => false,
                        (Some(x), Some(z)) => x > z,
                    }
                }
            } else {
                match (a, b) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(x), Some(y)) => x > y,
                }
            };
            if !strict && (!pid || pos <= lo_x - 2) {
                return Err(KernelError::CertificateViolation {
                    reason: format!(
                        "generator minimum fails to increase strictly at position {pos}"
                    ),
                });
            }
        }

        match (p.band(), self.finite) {
            (Some(_), true) | (None, false) => {
                return Err(KernelError::CertificateViolation {
                    reason: "band certificate disagrees with finiteness flag".to_string(),
                })
            }
            (Some(band), false) => {
                let bottom = min_at(p.lo());
                if bottom.is_none_or(|m| m < band.min_gen_degree) {
                    return Err(KernelError::CertificateViolation {
                        reason: "band bound exceeds the bottom term's generator minimum"
                            .to_string(),
                    });
                }
            }
            (None, true) => {}
        }

        for pos in p.lo()..=p.hi() {
            let src = PresentedModule::free(p.term(pos));
            let aug = match self.augmentations.get(&pos) {
                Some(a) => a.clone(),
                None => ModuleMap::zero(&src, &self.target.term(pos)),
            };
            let up = PresentedModule::free(p.term(pos + 1));
            let aug_up = match self.augmentations.get(&(pos + 1)) {
                Some(a) => a.clone(),
                None => ModuleMap::zero(&up, &self.target.term(pos + 1)),
            };
            let d_free = ModuleMap::new_unchecked(src.clone(), up, p.diff(pos).clone());
            let lhs = self.target.diff(pos).compose(&aug);
            let rhs = aug_up.compose(&d_free);
            if !lhs.sub(&rhs).is_zero_map()? {
                return Err(KernelError::CertificateViolation {
                    reason: format!(
                        "augmentation fails to commute with the differential at position {pos}"
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Resolves a module placed in cohomological degree 0, descending far enough
/// that every generator below the window has degree at least `escape_target`.
/// The window starts at `window` (default scales with the target) and doubles
/// until the escape is realized, up to [`MAX_RESOLUTION_WINDOW`].
pub fn resolve(
    m: &PresentedModule,
    escape_target: i64,
    window: Option<usize>,
) -> Result<BandedResolution, KernelError> {
    let w = window.unwrap_or_else(|| default_window(escape_target));
    build(
        &ModuleComplex::concentrated(m.clone(), 0),
        w,
        Some(escape_target),
    )
}

/// Resolves a bounded complex of modules; see [`resolve`].
pub fn resolve_complex(
    x: &ModuleComplex,
    escape_target: i64,
    window: Option<usize>,
) -> Result<BandedResolution, KernelError> {
    let w = window.unwrap_or_else(|| default_window(escape_target));
    build(x, w, Some(escape_target))
}

/// Resolves to a fixed window with no escape chasing: the complex descends
/// `window` steps (or stops earlier if the resolution is finite) and the
/// certificate records whatever degrees were realized.
pub(crate) fn resolution_to_window(
    x: &ModuleComplex,
    window: usize,
) -> Result<BandedResolution, KernelError> {
    build(x, window, None)
}

/// Minimal free resolution over a ring whose degree-zero part is the ground
/// field, truncated at `window` steps. Covers are minimal by construction,
/// so no differential entry has a unit coefficient.
pub fn minimal_resolution(
    m: &PresentedModule,
    window: usize,
) -> Result<BandedResolution, KernelError> {
    let ring = m.ring();
    if !matches!(ring.base_class(), BaseClass::Field) {
        return Err(KernelError::UnsupportedBase {
            base: format!("{:?}", ring.base_class()),
            operation: "minimal resolution".to_string(),
            reason: "minimality of covers is a vector-space notion; use resolve for \
                     univariate bases"
                .to_string(),
        });
    }
    build(&ModuleComplex::concentrated(m.clone(), 0), window, None)
}

fn default_window(escape_target: i64) -> usize {
    let t = escape_target.unsigned_abs() as usize;
    (2 * t + 10).max(6)
}

fn min_degree(f: &FreeModule) -> Option<i64> {
    f.degrees().iter().copied().min()
}

/// Presents `M / (positive-degree part of A) * M` by adjoining one relation
/// `x_v * e_t` per positive-weight variable and generator.
fn modulo_irrelevant(m: &PresentedModule) -> PresentedModule {
    let ring = m.ring().clone();
    let rank = m.gens().rank();
    let mut cols = m.relations().cols().to_vec();
    let mut degs = m.relations().source().degrees().to_vec();
    for t in 0..rank {
        for &v in &ring.positive_weight_vars() {
            let mut exps = vec![0u32; ring.nvars()];
            exps[v] = 1;
            let mut col = ModElem::zero(rank);
            col.comps[t] = Poly::term(Monomial(exps), ring.field().one());
            cols.push(col);
            degs.push(m.gens().degree(t) + ring.weights()[v]);
        }
    }
    let src = FreeModule::new(ring, degs);
    let rel = GradedMap::new(src, m.gens().clone(), cols)
        .expect("variable multiples of generators are homogeneous");
    PresentedModule::new(m.gens().clone(), rel)
}

/// How a kernel is covered by a free module.
enum CoverMode {
    /// Slicewise minimal generators; `enforce_free_at` demands that kernel
    /// generators in that degree split freely over a univariate base.
    Minimal { enforce_free_at: Option<i64> },
    /// Every listed kernel generator, valid over any base but with no
    /// minimality or degree claims.
    All,
}

/// Builds position `n`: the pullback kernel against the data one and two
/// positions up, a cover of it per `mode`, and the induced differential and
/// augmentation.
fn cover_step(
    x: &ModuleComplex,
    n: i64,
    f1: &FreeModule,
    d1: &GradedMap,
    eta1: &ModuleMap,
    mode: CoverMode,
) -> Result<Step, KernelError> {
    let ring = x.ring().clone();
    let xn = x.term(n);
    let xn1 = x.term(n + 1);
    let dx = x.diff(n);
    let f2 = d1.target().clone();

    let src = xn.direct_sum(&PresentedModule::free(f1.clone()));
    let tgt = xn1.direct_sum(&PresentedModule::free(f2.clone()));

    let mut cols: Vec<ModElem> = Vec::new();
    for s in 0..xn.gens().rank() {
        let top = &dx.map().cols()[s];
        let mut comps = top.comps.clone();
        comps.extend(std::iter::repeat_n(Poly::zero(), f2.rank()));
        cols.push(ModElem::from_comps(comps));
    }
    for s in 0..f1.rank() {
        let top = eta1.map().cols()[s].neg();
        let mut comps = top.comps;
        comps.extend_from_slice(&d1.cols()[s].comps);
        cols.push(ModElem::from_comps(comps));
    }
    let big = GradedMap::new(src.gens().clone(), tgt.gens().clone(), cols)?;
    // Well-defined on relations: the only source relations come from X^n and
    // map under d_X, which is itself a module map.
    let f = ModuleMap::new_unchecked(src.clone(), tgt, big);
    let (c, incl) = kernel_of_module_map(&f)?;

    let degrees: BTreeSet<i64> = (0..c.gens().rank()).map(|t| c.gens().degree(t)).collect();
    let mut chosen: Vec<(i64, ModElem)> = Vec::new();
    match mode {
        CoverMode::Minimal { enforce_free_at } => {
            let cbar = modulo_irrelevant(&c);
            for &e in &degrees {
                match ring.base_class() {
                    BaseClass::Field => {
                        let model = KSliceModel::build(&cbar, e)?;
                        for b in model.basis_elements(c.gens().rank()) {
                            chosen.push((e, b));
                        }
                    }
                    BaseClass::UnivariatePid { .. } => {
                        let model = PidSliceModel::build(&cbar, e)?;
                        for (elem, order) in model.generators(c.gens().rank()) {
                            if !order.is_zero() && enforce_free_at == Some(e) {
                                return Err(KernelError::CertificateViolation {
                                    reason: format!(
                                        "free splitting failed at position {n}: the kernel \
                                         slice in degree {e} has a torsion generator with \
                                         invariant factor {order}; the degree-escape argument \
                                         requires this slice to be projective over the \
                                         degree-zero subring"
                                    ),
                                });
                            }
                            chosen.push((e, elem));
                        }
                    }
                    BaseClass::General => {
                        unreachable!("general bases are rejected before covering")
                    }
                }
            }
        }
        CoverMode::All => {
            for &e in &degrees {
                for t in 0..c.gens().rank() {
                    if c.gens().degree(t) == e && !incl.map().cols()[t].is_zero() {
                        let mut b = ModElem::zero(c.gens().rank());
                        b.comps[t] = Poly::term(Monomial::one(ring.nvars()), ring.field().one());
                        chosen.push((e, b));
                    }
                }
            }
        }
    }

    let xr = xn.gens().rank();
    let term = FreeModule::new(ring.clone(), chosen.iter().map(|(e, _)| *e).collect());
    let mut eta_cols = Vec::with_capacity(chosen.len());
    let mut d_cols = Vec::with_capacity(chosen.len());
    for (_, b) in &chosen {
        let raw = incl.map().apply(b);
        debug_assert!(!raw.is_zero(), "minimal cover selected a zero element");
        // Normalize so the first nonzero component is monic; scaling a
        // generator by a unit changes nothing structural and keeps the
        // differential entries sign-stable.
        let lead = raw
            .comps
            .iter()
            .find_map(|p| p.leading_term().map(|(_, c)| c.clone()))
            .expect("nonzero ambient element");
        let ambient = raw.mul_term(&Monomial::one(ring.nvars()), &lead.inv());
        eta_cols.push(ModElem::from_comps(ambient.comps[..xr].to_vec()));
        d_cols.push(ModElem::from_comps(ambient.comps[xr..].to_vec()));
    }
    let diff = GradedMap::new(term.clone(), f1.clone(), d_cols)?;
    let aug_map = GradedMap::new(term.clone(), xn.gens().clone(), eta_cols)?;
    let aug = ModuleMap::new(PresentedModule::free(term.clone()), xn, aug_map)?;
    Ok(Step { term, diff, aug })
}

fn build(
    x: &ModuleComplex,
    window: usize,
    escape_target: Option<i64>,
) -> Result<BandedResolution, KernelError> {
    let ring = x.ring().clone();
    if matches!(ring.base_class(), BaseClass::General) {
        return Err(KernelError::UnsupportedBase {
            base: "GENERAL".to_string(),
            operation: "banded resolution".to_string(),
            reason: "cover degrees are certified over a field or univariate degree-zero \
                     subring only; this ring has a degree-zero relation or several \
                     weight-zero variables"
                .to_string(),
        });
    }
    let pid = matches!(ring.base_class(), BaseClass::UnivariatePid { .. });
    let hi = x.hi();
    let lo_x = x.lo();
    let mut window = window.max((hi - lo_x) as usize + 2);

    let mut steps: Vec<Step> = Vec::new();
    let mut finite = false;

    let empty = FreeModule::new(ring.clone(), Vec::new());
    let mut f1 = empty.clone();
    let mut d1 = GradedMap::zero(empty.clone(), empty.clone());
    let mut eta1 = ModuleMap::zero(&PresentedModule::free(empty), &x.term(hi + 1));

    let mut n = hi;
    loop {
        let target_lo = (-(window as i64)).min(lo_x - 2);
        if n < target_lo {
            let Some(goal) = escape_target else { break };
            let bottom = &steps.last().expect("window reaches below the input").term;
            if min_degree(bottom).is_none_or(|m| m >= goal) {
                break;
            }
            if window >= MAX_RESOLUTION_WINDOW {
                return Err(KernelError::ResourceCapExceeded {
                    what: format!("resolution window while chasing degree escape {goal}"),
                    limit: MAX_RESOLUTION_WINDOW,
                });
            }
            window *= 2;
            continue;
        }
        let enforce = if pid && n < lo_x && f1.rank() > 0 {
            min_degree(&f1)
        } else {
            None
        };
        let step = cover_step(x, n, &f1, &d1, &eta1, CoverMode::Minimal { enforce_free_at: enforce })?;
        let empty_term = step.term.rank() == 0;
        f1 = step.term.clone();
        d1 = step.diff.clone();
        eta1 = step.aug.clone();
        steps.push(step);
        if empty_term && n <= lo_x {
            finite = true;
            steps.pop();
            break;
        }
        n -= 1;
    }

    let complex = if steps.is_empty() {
        FreeComplex::zero(ring.clone())
    } else {
        let lo_built = hi - (steps.len() as i64 - 1);
        let terms: Vec<FreeModule> = steps.iter().rev().map(|s| s.term.clone()).collect();
        let mut diffs = Vec::with_capacity(steps.len() - 1);
        for i in 0..steps.len() - 1 {
            diffs.push(steps[steps.len() - 1 - i].diff.clone());
        }
        let c = FreeComplex::new(ring.clone(), lo_built, terms, diffs, None)?;
        if finite {
            c
        } else {
            let bound = min_degree(&steps[steps.len() - 1].term)
                .expect("a truncated resolution has a nonzero bottom term");
            c.with_band(BandCertificate { min_gen_degree: bound })
        }
    };

    let mut augmentations = BTreeMap::new();
    for (i, s) in steps.iter().enumerate() {
        let pos = hi - i as i64;
        if pos >= lo_x {
            augmentations.insert(pos, s.aug.clone());
        }
    }
    let certificate = certificate_from(&complex, escape_target, finite);
    let out = BandedResolution {
        complex,
        target: x.clone(),
        augmentations,
        certificate,
        finite,
    };
    out.verify()?;
    Ok(out)
}

/// Free resolution valid over any base: covers take every kernel generator,
/// so no minimality, degree-escape, or band claims are made. The window is
/// fixed; cohomology of the result against the input is reliable only at
/// positions at least two above the bottom of the window. Used where only
/// interior cohomology is consumed (Ext over a general base).
pub(crate) fn plain_resolution(
    x: &ModuleComplex,
    window: usize,
) -> Result<FreeComplex, KernelError> {
    let ring = x.ring().clone();
    let hi = x.hi();
    let lo_x = x.lo();
    let window = window.max((hi - lo_x) as usize + 2);
    let target_lo = (-(window as i64)).min(lo_x - 2);

    let mut steps: Vec<Step> = Vec::new();
    let empty = FreeModule::new(ring.clone(), Vec::new());
    let mut f1 = empty.clone();
    let mut d1 = GradedMap::zero(empty.clone(), empty.clone());
    let mut eta1 = ModuleMap::zero(&PresentedModule::free(empty), &x.term(hi + 1));

    let mut n = hi;
    while n >= target_lo {
        let step = cover_step(x, n, &f1, &d1, &eta1, CoverMode::All)?;
        let empty_term = step.term.rank() == 0;
        f1 = step.term.clone();
        d1 = step.diff.clone();
        eta1 = step.aug.clone();
        steps.push(step);
        if empty_term && n <= lo_x {
            steps.pop();
            break;
        }
        n -= 1;
    }

    if steps.is_empty() {
        return Ok(FreeComplex::zero(ring));
    }
    let lo_built = hi - (steps.len() as i64 - 1);
    let terms: Vec<FreeModule> = steps.iter().rev().map(|s| s.term.clone()).collect();
    let mut diffs = Vec::with_capacity(steps.len() - 1);
    for i in 0..steps.len() - 1 {
        diffs.push(steps[steps.len() - 1 - i].diff.clone());
    }
    FreeComplex::new(ring, lo_built, terms, diffs, None)
}

/// Tabulates escape indices from the raw generator degrees, using suffix
/// minima over the homological indices `0..=kmax`.
fn certificate_from(
    complex: &FreeComplex,
    escape_target: Option<i64>,
    finite: bool,
) -> DegreeEscapeCertificate {
    let kmax = (-complex.lo()).max(0) as usize;
    let mins: Vec<Option<i64>> = (0..=kmax)
        .map(|k| min_degree(&complex.term(-(k as i64))))
        .collect();
    let mut suffix = vec![i64::MAX; kmax + 2];
    for k in (0..=kmax).rev() {
        suffix[k] = suffix[k + 1].min(mins[k].unwrap_or(i64::MAX));
    }
    let lowest = mins.iter().flatten().copied().min();
    let realized = if finite {
        mins.iter().flatten().copied().max().map(|m| m + 1)
    } else {
        Some(suffix[kmax])
    };
    let target = escape_target.or(realized).unwrap_or(0);
    let beyond = if finite { Some(kmax + 1) } else { None };
    let mut entries = BTreeMap::new();
    if let Some(lo) = lowest {
        let mut i = lo;
        while i <= target {
            match (0..=kmax).find(|&k| suffix[k] >= i) {
                Some(k) => {
                    entries.insert(i, k);
                }
                None => match beyond {
                    Some(b) => {
                        entries.insert(i, b);
                    }
                    None => break,
                },
            }
            i += 1;
        }
    }
    DegreeEscapeCertificate { entries, target, beyond }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmod::{slice_k_dimension, slice_value, SliceValue};
    use crate::grring::{make_ring, GradedRing, MonomialOrder, PolyParser};
    use crate::scalars::Field;

    fn ring(vars: &[(&str, i64)], rels: &[&str]) -> GradedRing {
        let names: Vec<(String, i64)> = vars.iter().map(|(n, w)| (n.to_string(), *w)).collect();
        let parser = PolyParser::new(
            Field::Rational,
            vars.iter().map(|(n, _)| n.to_string()).collect(),
            MonomialOrder::new(vars.iter().map(|(_, w)| *w).collect()),
        );
        let rels: Vec<Poly> = rels.iter().map(|s| parser.parse(s, 1, 1).unwrap()).collect();
        make_ring(Field::Rational, names, rels).unwrap()
    }

    fn pp(r: &GradedRing, s: &str) -> Poly {
        PolyParser::for_ring(r).parse(s, 1, 1).unwrap()
    }

    fn kdim(m: &PresentedModule, e: i64) -> usize {
        slice_k_dimension(m, e).unwrap().expect("finite slice")
    }

    fn residue_field(r: &GradedRing) -> PresentedModule {
        let gens: Vec<Poly> = (0..r.nvars()).map(|v| r.var(v).poly().clone()).collect();
        PresentedModule::cyclic_quotient(r, &gens).unwrap()
    }

    #[test]
    fn finite_resolution_over_a_polynomial_ring_in_one_variable() {
        let r = ring(&[("x", 1)], &[]);
        let k = residue_field(&r);
        let res = resolve(&k, 3, None).unwrap();
        assert!(res.is_finite());
        assert!(res.complex().band().is_none());
        assert_eq!(res.complex().lo(), -1);
        assert_eq!(res.complex().hi(), 0);
        assert_eq!(res.complex().term(0).degrees(), &[0]);
        assert_eq!(res.complex().term(-1).degrees(), &[1]);
        assert_eq!(res.complex().diff(-1).entry(0, 0), &pp(&r, "x"));
        let h0 = res.complex().cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
        assert!(res.complex().cohomology(-1).unwrap().is_zero_module().unwrap());
        // Everything escapes past the end of a finite resolution.
        assert_eq!(res.certificate().escape_index(0), Some(0));
        assert_eq!(res.certificate().escape_index(1), Some(1));
        assert_eq!(res.certificate().escape_index(100), Some(2));
    }

    #[test]
    fn koszul_resolution_of_the_residue_field_in_two_variables() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let k = residue_field(&r);
        let res = minimal_resolution(&k, 6).unwrap();
        assert!(res.is_finite());
        assert_eq!(res.complex().lo(), -2);
        assert_eq!(res.complex().term(0).degrees(), &[0]);
        assert_eq!(res.complex().term(-1).degrees(), &[1, 1]);
        assert_eq!(res.complex().term(-2).degrees(), &[2]);
        // No differential entry of a minimal resolution has a nonzero
        // constant coefficient.
        for j in [-2i64, -1] {
            let d = res.complex().diff(j);
            for col in 0..d.source().rank() {
                for row in 0..d.target().rank() {
                    let p = d.entry(row, col);
                    for (m, _) in p.terms() {
                        assert!(m.0.iter().any(|&e| e > 0));
                    }
                }
            }
        }
        let h0 = res.complex().cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
        for j in [-2i64, -1] {
            assert!(res.complex().cohomology(j).unwrap().is_zero_module().unwrap());
        }
        res.verify().unwrap();
    }

    #[test]
    fn free_modules_resolve_as_themselves() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let m = PresentedModule::free(FreeModule::new(r.clone(), vec![3]));
        let res = minimal_resolution(&m, 5).unwrap();
        assert!(res.is_finite());
        assert_eq!(res.complex().lo(), 0);
        assert_eq!(res.complex().term(0).degrees(), &[3]);
    }

    #[test]
    fn residue_field_over_dual_numbers_resolves_periodically() {
        let r = ring(&[("u", 1)], &["u^2"]);
        let k = residue_field(&r);
        let res = resolve(&k, 3, None).unwrap();
        assert!(!res.is_finite());
        let band = res.complex().band().expect("infinite resolution is banded");
        let kmax = -res.complex().lo();
        assert!(kmax >= 5);
        for kk in 0..=kmax {
            let t = res.complex().term(-kk);
            assert_eq!(t.rank(), 1);
            assert_eq!(t.degrees(), &[kk]);
            if kk > 0 {
                assert_eq!(res.complex().diff(-kk).entry(0, 0), &pp(&r, "u"));
            }
        }
        assert_eq!(band.min_gen_degree, kmax);
        for i in 0..=3i64 {
            assert_eq!(res.certificate().escape_index(i), Some(i as usize));
        }
        // Interior exactness and the augmentation quasi-isomorphism in
        // degree zero.
        let h0 = res.complex().cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
        for j in 1..kmax {
            assert!(res.complex().cohomology(-j).unwrap().is_zero_module().unwrap());
        }
    }

    #[test]
    fn hypersurface_resolution_alternates_between_the_two_factors() {
        let r = ring(&[("x", 1), ("y", 1)], &["x*y"]);
        let m = PresentedModule::cyclic_quotient(&r, &[pp(&r, "x")]).unwrap();
        let res = resolve(&m, 4, None).unwrap();
        assert!(!res.is_finite());
        let kmax = -res.complex().lo();
        for kk in 0..=kmax {
            let t = res.complex().term(-kk);
            assert_eq!(t.rank(), 1, "rank at -{kk}");
            assert_eq!(t.degrees(), &[kk]);
        }
        // d alternates x, y, x, y, ... starting from the presentation col x.
        assert_eq!(res.complex().diff(-1).entry(0, 0), &pp(&r, "x"));
        assert_eq!(res.complex().diff(-2).entry(0, 0), &pp(&r, "y"));
        assert_eq!(res.complex().diff(-3).entry(0, 0), &pp(&r, "x"));
        for j in 1..kmax {
            assert!(res.complex().cohomology(-j).unwrap().is_zero_module().unwrap());
        }
    }

    #[test]
    fn general_base_is_rejected() {
        let r = ring(&[("x", 0), ("y", 1)], &["x^2", "y^2"]);
        let m = PresentedModule::cyclic_quotient(&r, &[pp(&r, "x")]).unwrap();
        let err = resolve(&m, 1, None).unwrap_err();
        assert!(matches!(err, KernelError::UnsupportedBase { .. }));
        let err = minimal_resolution(&m, 4).unwrap_err();
        assert!(matches!(err, KernelError::UnsupportedBase { .. }));
    }

    #[test]
    fn univariate_base_resolution_splits_free_slices() {
        // A = k[z][T]/(z^2 T) with |z| = 0, |T| = 1. The cyclic module A/(T)
        // resolves with one generator per step and minima 0,1,1,2,2,...
        let r = ring(&[("z", 0), ("T", 1)], &["z^2*T"]);
        assert!(matches!(r.base_class(), BaseClass::UnivariatePid { .. }));
        let m = PresentedModule::cyclic_quotient(&r, &[pp(&r, "T")]).unwrap();
        let res = resolve(&m, 2, None).unwrap();
        assert!(!res.is_finite());
        let kmax = -res.complex().lo();
        assert!(kmax >= 5);
        for kk in 0..=kmax {
            let t = res.complex().term(-kk);
            assert_eq!(t.rank(), 1, "rank at -{kk}");
            assert_eq!(t.degrees(), &[(kk + 1) / 2], "degree at -{kk}");
        }
        assert_eq!(res.complex().diff(-1).entry(0, 0), &pp(&r, "T"));
        assert_eq!(res.complex().diff(-2).entry(0, 0), &pp(&r, "z^2"));
        assert_eq!(res.complex().diff(-3).entry(0, 0), &pp(&r, "T"));
        assert_eq!(res.certificate().escape_index(1), Some(1));
        assert_eq!(res.certificate().escape_index(2), Some(3));
        // H^0 of the resolution matches A/(T): free of rank one over k[z] in
        // degree 0, zero in degree 1.
        let h0 = res.complex().cohomology(0).unwrap();
        match slice_value(&h0, 0).unwrap() {
            SliceValue::Shape(shape) => {
                assert_eq!(shape.free_rank, 1);
                assert!(shape.torsion.is_empty());
            }
            other => panic!("expected a shape, got {other:?}"),
        }
        match slice_value(&h0, 1).unwrap() {
            SliceValue::Shape(shape) => {
                assert_eq!(shape.free_rank, 0);
                assert!(shape.torsion.is_empty());
            }
            other => panic!("expected a shape, got {other:?}"),
        }
        for j in 1..kmax {
            assert!(res.complex().cohomology(-j).unwrap().is_zero_module().unwrap());
        }
    }

    #[test]
    fn escape_window_extends_until_the_target_is_realized() {
        let r = ring(&[("u", 1)], &["u^2"]);
        let k = residue_field(&r);
        let res = resolve(&k, 20, Some(4)).unwrap();
        // 4 doubles to 8, 16, then 32; generator minima over the dual
        // numbers grow by one per step.
        assert_eq!(res.complex().lo(), -32);
        assert_eq!(res.certificate().escape_index(20), Some(20));
        assert!(res.certificate().escape_index(33).is_none());
    }

    #[test]
    fn unreachable_escape_hits_the_window_cap() {
        let r = ring(&[("u", 1)], &["u^2"]);
        let k = residue_field(&r);
        let err = resolve(&k, 1 + MAX_RESOLUTION_WINDOW as i64, Some(8)).unwrap_err();
        assert!(matches!(err, KernelError::ResourceCapExceeded { .. }));
    }

    #[test]
    fn complex_input_resolves_the_two_term_complex() {
        // X = [A(-1) --u--> A] over the dual numbers, placed in degrees
        // -1 and 0. H^0 = k at internal degree 0; H^{-1} = u*A(-1), one
        // dimension at internal degree 2.
        let r = ring(&[("u", 1)], &["u^2"]);
        let a = PresentedModule::free(FreeModule::new(r.clone(), vec![0]));
        let a1 = PresentedModule::free(FreeModule::new(r.clone(), vec![1]));
        let gm = GradedMap::new(
            a1.gens().clone(),
            a.gens().clone(),
            vec![ModElem::from_comps(vec![pp(&r, "u")])],
        )
        .unwrap();
        let f = ModuleMap::new(a1, a, gm).unwrap();
        let x = ModuleComplex::of_map(&f);
        let res = resolve_complex(&x, 1, None).unwrap();
        res.verify().unwrap();
        let h0 = res.complex().cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
        assert_eq!(kdim(&h0, 2), 0);
        let h1 = res.complex().cohomology(-1).unwrap();
        assert_eq!(kdim(&h1, 2), 1);
        assert_eq!(kdim(&h1, 0), 0);
        assert_eq!(kdim(&h1, 1), 0);
        assert_eq!(kdim(&h1, 3), 0);
        for j in 2..(-res.complex().lo()) {
            assert!(res.complex().cohomology(-j).unwrap().is_zero_module().unwrap());
        }
        // The augmentations commute with the differentials on the nose.
        let aug0 = res.augmentation(0).unwrap();
        let aug1 = res.augmentation(-1).unwrap();
        let d_free = ModuleMap::new_unchecked(
            PresentedModule::free(res.complex().term(-1)),
            PresentedModule::free(res.complex().term(0)),
            res.complex().diff(-1).clone(),
        );
        let lhs = x.diff(-1).compose(aug1);
        let rhs = aug0.compose(&d_free);
        assert!(lhs.sub(&rhs).is_zero_map().unwrap());
    }

    #[test]
    fn zero_module_resolves_to_the_zero_complex() {
        let r = ring(&[("x", 1)], &[]);
        let z = PresentedModule::cyclic_quotient(&r, &[pp(&r, "1")]).unwrap();
        let res = resolve(&z, 5, None).unwrap();
        assert!(res.is_finite());
        assert_eq!(res.complex().total_rank(), 0);
        assert_eq!(res.certificate().escape_index(3), Some(0));
    }

    #[test]
    fn escape_certificate_answers_below_and_above_the_table() {
        let r = ring(&[("u", 1)], &["u^2"]);
        let m = residue_field(&r).twist(-3);
        // Generators of M sit in degree 3, so low thresholds escape at 0.
        let res = resolve(&m, 5, None).unwrap();
        assert_eq!(res.certificate().escape_index(-7), Some(0));
        assert_eq!(res.certificate().escape_index(3), Some(0));
        assert_eq!(res.certificate().escape_index(4), Some(1));
        assert!(res.certificate().escape_index(10_000).is_none());
    }
}
