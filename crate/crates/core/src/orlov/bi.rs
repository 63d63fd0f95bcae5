//! Stable embedding of a graded module into the subcategory of complexes
//! generated in internal degrees `>= i` and left-orthogonal to every twist
//! `A(e)[m]` with `e <= -i`.
//!
//! The construction runs entirely on certified data.  A banded projective
//! resolution of the module is split at the threshold: summands generated
//! below `i` are discarded and the surviving quotient complex is the
//! truncated replacement.  Splicing a finite resolution of its edge cokernel
//! onto the tail produces an honest free model deep enough to dualize; the
//! dual is truncated above the certified vanishing edge, resolved with a
//! degree-escape target of `1 - i`, split again, and dualized back.  The
//! result is a comparison map from the truncated replacement onto a bounded
//! complex of frees generated in degrees `>= i`; the embedded object is the
//! shifted cone (the fiber) of that comparison.
//!
//! Every stage is re-verified after the fact: the fiber's cohomology slices
//! vanish below the threshold, its free model is orthogonal to the probed
//! twists, the truncated replacement agrees slicewise with the split
//! quotient, and the fiber triangle is slice-exact on the requested window.
//! Failures surface as `CertificateViolation` rather than silent output.
//!
//! `stable_hom` composes the embedding with a totalized Hom complex to
//! compute morphism spaces between embedded objects; the answer is
//! independent of the splitting threshold, which the tests exercise.

use std::collections::BTreeMap;

use crate::complexes::{
    cone, cone_modules, soft_truncate_free, split_projectives, top_truncate, ChainMap,
    FreeComplex, ModuleChainMap, ModuleComplex,
};
use crate::error::KernelError;
use crate::grmod::{
    kernel_of_module_map, slice_value, FreeModule, GradedMap, ModuleMap, PresentedModule,
    SliceValue,
};
use crate::grring::{BaseClass, GradedRing, ModElem};
use crate::orlov::gorenstein::{gorenstein_parameters, GorensteinData};
use crate::resolve::banded::resolution_to_window;
use crate::resolve::{resolve, resolve_complex, BandedResolution};

/// The embedded object together with the intermediate data that witnesses
/// how it was produced and which checks it passed.
#[derive(Debug, Clone)]
pub struct BFunctorData {
    complex: ModuleComplex,
    free_model: FreeComplex,
    free_model_exact: bool,
    psi: ModuleComplex,
    free_factor: FreeComplex,
    comparison: ModuleChainMap,
    gorenstein: GorensteinData,
    threshold: i64,
    escape_index: usize,
    dual_edge: i64,
    checked_window: (i64, i64),
}

impl BFunctorData {
    /// The embedded object: the fiber of the comparison map, as a complex of
    /// presented modules.
    pub fn complex(&self) -> &ModuleComplex {
        &self.complex
    }

    /// A complex of free modules quasi-isomorphic to the embedded object on
    /// the verified window.  When [`Self::free_model_exact`] is false the
    /// model carries one spurious cohomology class at its bottom edge, below
    /// every verified index.
    pub fn free_model(&self) -> &FreeComplex {
        &self.free_model
    }

    /// Whether the free model is exact beyond its own window, i.e. whether
    /// the spliced edge resolution terminated.
    pub fn free_model_exact(&self) -> bool {
        self.free_model_exact
    }

    /// The truncated projective replacement of the input module: the source
    /// of the comparison map.
    pub fn psi(&self) -> &ModuleComplex {
        &self.psi
    }

    /// The bounded complex of frees generated in degrees `>= i` that the
    /// replacement maps onto.
    pub fn free_factor(&self) -> &FreeComplex {
        &self.free_factor
    }

    /// The comparison map itself; the embedded object is its shifted cone.
    pub fn comparison(&self) -> &ModuleChainMap {
        &self.comparison
    }

    /// Certified Gorenstein parameters of the ring.
    pub fn gorenstein(&self) -> &GorensteinData {
        &self.gorenstein
    }

    /// The splitting threshold `i`.
    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    /// Resolution index past which every generator degree is `>= i`.
    pub fn escape_index(&self) -> usize {
        self.escape_index
    }

    /// Cohomological edge above which the dualized model was certified to be
    /// exact before truncation.
    pub fn dual_edge(&self) -> i64 {
        self.dual_edge
    }

    /// Internal-degree window over which the output was verified.
    pub fn checked_window(&self) -> (i64, i64) {
        self.checked_window
    }
}

/// Embeds `m` into the subcategory of complexes generated in internal
/// degrees `>= i` and orthogonal to the twists `A(e)[mm]` with `e <= -i`,
/// verifying the output slicewise over internal degrees `lo..=hi`.
///
/// Requires a FIELD or UNIVARIATE_PID base and a ring whose Gorenstein
/// parameters certify within the scanned window.
pub fn b_functor(
    m: &PresentedModule,
    i: i64,
    lo: i64,
    hi: i64,
) -> Result<BFunctorData, KernelError> {
    b_functor_with_tail(m, i, lo, hi, 0)
}

/// As [`b_functor`] but forces the spliced free model at least `min_tail`
/// steps deep, so callers pairing against it can keep their own window
/// inside the certified region.
pub(crate) fn b_functor_with_tail(
    m: &PresentedModule,
    i: i64,
    lo: i64,
    hi: i64,
    min_tail: usize,
) -> Result<BFunctorData, KernelError> {
    let ring = m.ring().clone();
    if matches!(ring.base_class(), BaseClass::General) {
        return Err(KernelError::UnsupportedBase {
            base: ring.base_class().name().into(),
            operation: "stable embedding".into(),
            reason: "truncation slices must be finitely generated over the degree-zero part"
                .into(),
        });
    }
    let gorenstein = gorenstein_parameters(&ring, ring.nvars() + 2)?;
    let qp = quotient_part(m, i)?;
    let k2 = qp.escape as i64 + gorenstein.n as i64 + ring.nvars() as i64 + 4;
    if qp.y.total_rank() == 0 {
        // Everything in the resolution is generated below the threshold: the
        // module is perfect relative to the discarded twists and embeds to 0.
        return zero_data(&ring, gorenstein, i, &qp, k2, lo, hi);
    }
    let depth = (k2 + 3).max(min_tail as i64);
    let (g, finite_tail) = spliced_model(&qp.x, &qp.y, depth)?;
    let (v, mu) = split_comparison(&g, k2, i)?;
    let free_model = cone(&mu)?.shift(-1);

    // Module-level form of the same triangle: soft-truncate the spliced model
    // back to the certified edge and descend the comparison map to it.
    let x_g = soft_truncate_free(&g, k2)?;
    let v_mod = if v.total_rank() == 0 {
        ModuleComplex::zero(ring.clone())
    } else {
        ModuleComplex::from_free(&v)?
    };
    let mut comps: BTreeMap<i64, ModuleMap> = BTreeMap::new();
    for n in x_g.lo()..=x_g.hi() {
        let comp = mu.component(n);
        if comp.is_zero() {
            continue;
        }
        comps.insert(n, ModuleMap::new(x_g.term(n), v_mod.term(n), comp)?);
    }
    let comparison = ModuleChainMap::new(x_g.clone(), v_mod, comps)?;
    let complex = cone_modules(&comparison)?.shift(-1);

    let data = BFunctorData {
        complex,
        free_model,
        free_model_exact: finite_tail,
        psi: x_g,
        free_factor: v,
        comparison,
        gorenstein,
        threshold: i,
        escape_index: qp.escape,
        dual_edge: k2,
        checked_window: (lo, hi),
    };
    verify_embedding(&data, &qp.x)?;
    Ok(data)
}

pub(crate) struct QuotientPart {
    /// Module-level truncated replacement: the split quotient with its edge
    /// term replaced by the cokernel of the incoming differential.
    pub(crate) x: ModuleComplex,
    /// Free form of the split quotient, band certificate inherited.
    pub(crate) y: FreeComplex,
    /// The split-off subcomplex of summands generated below the threshold;
    /// bounded by the degree-escape certificate.
    pub(crate) prec: FreeComplex,
    /// Index past which the resolution's generators escaped the threshold.
    pub(crate) escape: usize,
    /// Whether the underlying resolution terminated inside its window.
    pub(crate) finite: bool,
}

/// Resolves `m` far enough that the generator degrees escape `i`, splits off
/// the summands generated below the threshold, and soft-truncates the
/// surviving quotient at the escape edge.
pub(crate) fn quotient_part(m: &PresentedModule, i: i64) -> Result<QuotientPart, KernelError> {
    let mut res = resolve(m, i, None)?;
    let mut j0 = escape_index_of(&res, i)?;
    let mut k1 = j0 as i64 + 2;
    if !res.is_finite() && res.complex().lo() >= -k1 {
        // The escape chase stopped as soon as the certificate held; deepen the
        // window so the truncation edge sits strictly inside it.  Positions
        // are deterministic, so the escape index is unchanged.
        res = resolve(m, i, Some((k1 + 3) as usize))?;
        j0 = escape_index_of(&res, i)?;
        k1 = j0 as i64 + 2;
    }
    let finite = res.is_finite();
    let split = split_projectives(res.complex(), i)?;
    let y = split.succ;
    let prec = split.prec;
    if y.total_rank() == 0 {
        return Ok(QuotientPart {
            x: ModuleComplex::zero(m.ring().clone()),
            y,
            prec,
            escape: j0,
            finite,
        });
    }
    let x = soft_truncate_free(&y, k1)?;
    Ok(QuotientPart {
        x,
        y,
        prec,
        escape: j0,
        finite,
    })
}

fn escape_index_of(res: &BandedResolution, i: i64) -> Result<usize, KernelError> {
    res.certificate()
        .escape_index(i)
        .ok_or_else(|| KernelError::CertificateViolation {
            reason: format!(
                "resolution window [{}, 0] never escapes generator degree {i}",
                res.complex().lo()
            ),
        })
}

/// Replaces the infinite tail of `y` below the truncation edge by a genuine
/// resolution of the edge cokernel, spliced through the augmentation.  The
/// result agrees with `y` above the edge and is exact below it down to its
/// own window; the second component reports whether the edge resolution
/// terminated (in which case the model is exact everywhere below).
fn spliced_model(
    x: &ModuleComplex,
    y: &FreeComplex,
    depth: i64,
) -> Result<(FreeComplex, bool), KernelError> {
    let ring = y.ring().clone();
    let edge = x.lo();
    let e = x.term(edge);
    let window = ((depth + edge).max(1)) as usize;
    let e_res = resolution_to_window(&ModuleComplex::concentrated(e.clone(), 0), window)?;
    let r = e_res.complex().clone();
    let alpha = e_res
        .augmentation(0)
        .expect("edge resolution carries its augmentation")
        .map()
        .clone();

    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for j in r.lo()..=0 {
        terms.push(r.term(j));
        if j < 0 {
            diffs.push(r.diff(j));
        }
    }
    // Splice: the edge differential of the quotient complex factors through
    // the cokernel presentation, so composing with the augmentation lands the
    // resolution's top on the original frame one step up.  A quotient
    // concentrated at the edge has nothing above it to splice onto.
    if edge < y.hi() {
        diffs.push(y.diff(edge).compose(&alpha));
        for j in (edge + 1)..=y.hi() {
            terms.push(y.term(j));
            if j < y.hi() {
                diffs.push(y.diff(j));
            }
        }
    }
    let g = FreeComplex::new(ring, edge + r.lo(), terms, diffs, None)?;

    // The splice must present the same object as the truncated replacement:
    // check the augmentation square into the edge cokernel.
    let g_mod = ModuleComplex::from_free(&g)?;
    let mut comps: BTreeMap<i64, ModuleMap> = BTreeMap::new();
    comps.insert(edge, ModuleMap::new(g_mod.term(edge), x.term(edge), alpha)?);
    for j in (edge + 1)..=y.hi() {
        comps.insert(
            j,
            ModuleMap::new_unchecked(
                g_mod.term(j),
                x.term(j),
                GradedMap::identity(g_mod.term(j).gens()),
            ),
        );
    }
    ModuleChainMap::new(g_mod, x.clone(), comps)?;
    Ok((g, e_res.is_finite()))
}

/// Dualizes the spliced model, truncates above the certified edge, resolves
/// the truncation with escape target `1 - i`, splits, and dualizes the
/// below-threshold part back: the result is a bounded complex `v` of frees
/// generated in degrees `>= i` and a chain map from the spliced model onto
/// it.
fn split_comparison(
    g: &FreeComplex,
    k2: i64,
    i: i64,
) -> Result<(FreeComplex, ChainMap), KernelError> {
    let ring = g.ring().clone();
    let z = g.dualize()?;
    // The duality argument pins the dual's cohomology at or below the edge;
    // probe the first two indices above it before truncating them away.
    for probe in [k2 + 1, k2 + 2] {
        if !z.cohomology(probe)?.is_zero_module()? {
            return Err(KernelError::CertificateViolation {
                reason: format!(
                    "dual of the spliced replacement has cohomology at index {probe}, above \
                     the truncation edge {k2}; the duality window is too small"
                ),
            });
        }
    }
    let (z_trunc, w) = top_truncate(&z, k2)?;
    let cut = k2 < z.hi();
    let w_pos = z_trunc.hi();
    // `top_truncate` swaps the edge term for the kernel of the outgoing
    // differential but does not hand back the inclusion; recompute it from
    // the same map (the kernel routine is deterministic).
    let incl_w = if cut {
        let edge_map = ModuleMap::new_unchecked(
            PresentedModule::free(z.term(k2)),
            PresentedModule::free(z.term(k2 + 1)),
            z.diff(k2),
        );
        let (w2, incl) = kernel_of_module_map(&edge_map)?;
        debug_assert!(w2.same_presentation(&w));
        Some(incl)
    } else {
        None
    };

    let q_res = resolve_complex(&z_trunc, 1 - i, None)?;
    let split = split_projectives(q_res.complex(), 1 - i)?;
    let prec = trim(&split.prec);
    if prec.total_rank() == 0 {
        let v = FreeComplex::zero(ring);
        let mu = ChainMap::new(g.clone(), v.clone(), BTreeMap::new())?;
        return Ok((v, mu));
    }

    // Composite from the below-threshold part into the dual: augmentation of
    // the resolution followed (at the top) by the kernel inclusion, then the
    // split inclusion.  Positions below the truncation window contribute
    // nothing.
    let mut comps: BTreeMap<i64, GradedMap> = BTreeMap::new();
    for n in prec.lo()..=prec.hi() {
        if n < z_trunc.lo() || prec.term(n).rank() == 0 {
            continue;
        }
        let aug = q_res
            .augmentation(n)
            .expect("resolution carries augmentations on the input window")
            .map()
            .clone();
        let into_z = match (&incl_w, n == w_pos) {
            (Some(incl), true) => incl.map().compose(&aug),
            _ => aug,
        };
        comps.insert(n, into_z.compose(&split.inclusion.component(n)));
    }
    let c_kappa = ChainMap::new(prec.clone(), z.clone(), comps)?;

    let v = prec.dualize()?;
    let mut mu_comps: BTreeMap<i64, GradedMap> = BTreeMap::new();
    for n in -prec.hi()..=-prec.lo() {
        let comp = c_kappa.component(-n).dual();
        if comp.is_zero() {
            continue;
        }
        mu_comps.insert(n, comp);
    }
    let mu = ChainMap::new(g.clone(), v.clone(), mu_comps)?;
    for j in v.lo()..=v.hi() {
        if let Some(&d) = v.term(j).degrees().iter().find(|&&d| d < i) {
            return Err(KernelError::CertificateViolation {
                reason: format!(
                    "split comparison target has a generator of degree {d} < {i} at index {j}"
                ),
            });
        }
    }
    Ok((v, mu))
}

/// Drops rank-zero edge terms.  The band certificate does not survive (it
/// was a statement about the discarded window), so the result is unbanded.
fn trim(x: &FreeComplex) -> FreeComplex {
    let mut lo = x.lo();
    let mut hi = x.hi();
    while lo <= hi && x.term(lo).rank() == 0 {
        lo += 1;
    }
    while lo <= hi && x.term(hi).rank() == 0 {
        hi -= 1;
    }
    if lo > hi {
        return FreeComplex::zero(x.ring().clone());
    }
    let terms: Vec<FreeModule> = (lo..=hi).map(|j| x.term(j)).collect();
    let diffs: Vec<GradedMap> = (lo..hi).map(|j| x.diff(j)).collect();
    FreeComplex::new(x.ring().clone(), lo, terms, diffs, None)
        .expect("retained window of a complex is a complex")
}

fn zero_data(
    ring: &GradedRing,
    gorenstein: GorensteinData,
    i: i64,
    qp: &QuotientPart,
    k2: i64,
    lo: i64,
    hi: i64,
) -> Result<BFunctorData, KernelError> {
    let zc = ModuleComplex::zero(ring.clone());
    let zf = FreeComplex::zero(ring.clone());
    let comparison = ModuleChainMap::new(zc.clone(), zc.clone(), BTreeMap::new())?;
    Ok(BFunctorData {
        complex: zc.clone(),
        free_model: zf.clone(),
        free_model_exact: true,
        psi: zc,
        free_factor: zf,
        comparison,
        gorenstein,
        threshold: i,
        escape_index: qp.escape,
        dual_edge: k2,
        checked_window: (lo, hi),
    })
}

fn cohomology_table(
    c: &ModuleComplex,
) -> Result<BTreeMap<i64, PresentedModule>, KernelError> {
    let mut table = BTreeMap::new();
    for j in c.lo()..=c.hi() {
        table.insert(j, c.cohomology(j)?);
    }
    Ok(table)
}

fn slice_rank(v: &SliceValue) -> usize {
    match v {
        SliceValue::Dim(d) => *d,
        SliceValue::Shape(s) => s.free_rank,
    }
}

/// Post-construction battery: degree bounds, orthogonality, replacement
/// honesty, and slice-exactness of the fiber triangle, all over the
/// requested window.
fn verify_embedding(data: &BFunctorData, x: &ModuleComplex) -> Result<(), KernelError> {
    let (lo, hi) = data.checked_window;
    let i = data.threshold;
    let bt = cohomology_table(&data.complex)?;
    let gt = cohomology_table(&data.psi)?;
    let vt = cohomology_table(data.comparison.target())?;
    let xt = cohomology_table(x)?;

    // Generated in degrees >= i: every cohomology slice below the threshold
    // vanishes.
    for (j, h) in &bt {
        for e in lo..=hi.min(i - 1) {
            if !slice_value(h, e)?.is_zero() {
                return Err(KernelError::CertificateViolation {
                    reason: format!(
                        "embedded complex has cohomology in internal degree {e} < {i} at index {j}"
                    ),
                });
            }
        }
    }

    // Orthogonality to the twists A(e)[mm], e <= -i: cohomology slices of
    // the dualized free model.  The model's spurious bottom class (when the
    // tail is inexact) duals to an index far above the probed range.
    let dual = data.free_model.dualize()?;
    let top = (data.gorenstein.n as i64 + 2).max(4);
    let span = (hi - lo).max(4);
    for mm in -2..=top {
        let h = dual.cohomology(mm)?;
        for e in (-i - span)..=(-i) {
            if !slice_value(&h, e)?.is_zero() {
                return Err(KernelError::CertificateViolation {
                    reason: format!(
                        "embedded complex pairs nontrivially with the twist A({e})[{mm}]"
                    ),
                });
            }
        }
    }

    // The soft-truncated spliced model must present the same object as the
    // truncated replacement on the window, and nothing below it.
    for (j, h) in &gt {
        for e in lo..=hi {
            let got = slice_value(h, e)?;
            match xt.get(j) {
                Some(hx) => {
                    let want = slice_value(hx, e)?;
                    if got != want {
                        return Err(KernelError::CertificateViolation {
                            reason: format!(
                                "spliced replacement disagrees with the split quotient at \
                                 index {j}, internal degree {e}: {got:?} vs {want:?}"
                            ),
                        });
                    }
                }
                None => {
                    if !got.is_zero() {
                        return Err(KernelError::CertificateViolation {
                            reason: format!(
                                "spliced replacement has cohomology at index {j} outside the \
                                 replacement window, internal degree {e}"
                            ),
                        });
                    }
                }
            }
        }
    }

    // Fiber triangle b -> psi -> v: Euler characteristics of each slice
    // cancel; k-dimensions too when every slice is finite.
    for e in lo..=hi {
        let mut rank_chi: i64 = 0;
        let mut dim_chi: i64 = 0;
        let mut all_finite = true;
        let mut tally = |j: i64, v: &SliceValue, orient: i64| {
            let sign = if j.rem_euclid(2) == 0 { orient } else { -orient };
            rank_chi += sign * slice_rank(v) as i64;
            match v.k_dimension() {
                Some(d) => dim_chi += sign * d as i64,
                None => all_finite = false,
            }
        };
        for (j, h) in &bt {
            tally(*j, &slice_value(h, e)?, 1);
        }
        for (j, h) in &gt {
            tally(*j, &slice_value(h, e)?, -1);
        }
        for (j, h) in &vt {
            tally(*j, &slice_value(h, e)?, 1);
        }
        if rank_chi != 0 {
            return Err(KernelError::CertificateViolation {
                reason: format!(
                    "fiber triangle is not slice-exact in internal degree {e}: rank \
                     characteristic {rank_chi}"
                ),
            });
        }
        if all_finite && dim_chi != 0 {
            return Err(KernelError::CertificateViolation {
                reason: format!(
                    "fiber triangle is not slice-exact in internal degree {e}: dimension \
                     characteristic {dim_chi}"
                ),
            });
        }
    }
    Ok(())
}

/// Dimension of the degree-zero morphism space from the embedded class of
/// `m` to the embedded class of `n` shifted by `shift`, at threshold 0.
pub fn stable_hom(
    m: &PresentedModule,
    n: &PresentedModule,
    shift: i64,
) -> Result<usize, KernelError> {
    stable_hom_at(m, n, shift, 0)
}

/// As [`stable_hom`] at an explicit splitting threshold.  The embedding
/// composed with the quotient by perfect complexes is independent of the
/// threshold, so the answer is too.
pub fn stable_hom_at(
    m: &PresentedModule,
    n: &PresentedModule,
    shift: i64,
    threshold: i64,
) -> Result<usize, KernelError> {
    let (lo, hi) = (threshold - 3, threshold + 3);
    let bn = b_functor_with_tail(n, threshold, lo, hi, 0)?;
    let target = bn.complex();
    // The source model must be exact at every index feeding the probed
    // cohomology; deepen its tail past the target's window.
    let needed = (shift + 2 - target.lo()).max(0) as usize;
    let bm = b_functor_with_tail(m, threshold, lo, hi, needed)?;
    let source = bm.free_model();
    if !bm.free_model_exact() && source.lo() > target.lo() - shift - 2 {
        return Err(KernelError::CertificateViolation {
            reason: format!(
                "free model window [{}, {}] is too shallow to probe shift {shift}",
                source.lo(),
                source.hi()
            ),
        });
    }
    let total = hom_shift_total(source, target, shift)?;
    let h = total.cohomology(shift)?;
    slice_value(&h, 0)?
        .k_dimension()
        .ok_or(KernelError::UnboundedSlice { degree: 0 })
}

/// Totalized Hom complex from a complex of frees into a complex of presented
/// modules, materialized only at indices `shift - 1 ..= shift + 1`: term `p`
/// is the direct sum over source positions `j` of the target term at `j + p`
/// twisted by each source generator degree, and the differential is
/// `f -> d_N . f - (-1)^p f . d_P`.
fn hom_shift_total(
    pm: &FreeComplex,
    nx: &ModuleComplex,
    shift: i64,
) -> Result<ModuleComplex, KernelError> {
    let ring = pm.ring().clone();
    let order = ring.order();
    let mut terms: Vec<PresentedModule> = Vec::new();
    let mut offsets: Vec<BTreeMap<(i64, usize), usize>> = Vec::new();
    let mut blocks: Vec<Vec<(i64, usize, i64)>> = Vec::new();

    for p in (shift - 1)..=(shift + 1) {
        let jlo = (nx.lo() - p).max(pm.lo());
        let jhi = (nx.hi() - p).min(pm.hi());
        let mut term: Option<PresentedModule> = None;
        let mut offs: BTreeMap<(i64, usize), usize> = BTreeMap::new();
        let mut blks: Vec<(i64, usize, i64)> = Vec::new();
        let mut gens_so_far = 0usize;
        for j in jlo..=jhi {
            let src = pm.term(j);
            for s in 0..src.rank() {
                let gamma = src.degree(s);
                let piece = nx.term(j + p).twist(gamma);
                offs.insert((j, s), gens_so_far);
                gens_so_far += piece.gens().rank();
                blks.push((j, s, gamma));
                term = Some(match term {
                    Some(t) => t.direct_sum(&piece),
                    None => piece,
                });
            }
        }
        terms.push(term.unwrap_or_else(|| {
            PresentedModule::free(FreeModule::new(ring.clone(), Vec::new()))
        }));
        offsets.push(offs);
        blocks.push(blks);
    }

    let mut diffs: Vec<ModuleMap> = Vec::new();
    for idx in 0..2 {
        let p = shift - 1 + idx as i64;
        let src_t = &terms[idx];
        let tgt_t = &terms[idx + 1];
        let tgt_rank = tgt_t.gens().rank();
        let mut cols: Vec<ModElem> = Vec::new();
        for &(j, s, _gamma) in &blocks[idx] {
            let src_piece_rank = nx.term(j + p).gens().rank();
            for c in 0..src_piece_rank {
                let mut col = ModElem::zero(tgt_rank);
                // Covariant part: postcompose with the target differential.
                if let Some(&row_base) = offsets[idx + 1].get(&(j, s)) {
                    let dn = nx.diff(j + p);
                    let gm = dn.map();
                    for r in 0..gm.target().rank() {
                        let entry = gm.entry(r, c);
                        if !entry.is_zero() {
                            col.comps[row_base + r] =
                                col.comps[row_base + r].add(order, entry);
                        }
                    }
                }
                // Contravariant part: precompose with the source differential,
                // signed by -(-1)^p.
                let dsrc = pm.diff(j - 1);
                for sp in 0..dsrc.source().rank() {
                    let entry = dsrc.entry(s, sp);
                    if entry.is_zero() {
                        continue;
                    }
                    let Some(&row_base) = offsets[idx + 1].get(&(j - 1, sp)) else {
                        continue;
                    };
                    let signed = if p.rem_euclid(2) == 0 {
                        entry.neg()
                    } else {
                        entry.clone()
                    };
                    col.comps[row_base + c] = col.comps[row_base + c].add(order, &signed);
                }
                cols.push(col);
            }
        }
        let gm = GradedMap::new(src_t.gens().clone(), tgt_t.gens().clone(), cols)?;
        diffs.push(ModuleMap::new_unchecked(src_t.clone(), tgt_t.clone(), gm));
    }
    ModuleComplex::new(ring, shift - 1, terms, diffs)
}
