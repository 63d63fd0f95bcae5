//! Cochain complexes of presented modules, and the soft truncations that
//! connect them to free complexes.
//!
//! A [`ModuleComplex`] is always fully materialized: band certificates live
//! on free complexes only, and the truncation operations here are what turn
//! a banded free complex into a bounded, presented replacement. The bottom
//! truncation inserts a cokernel at the lower edge, the top truncation a
//! kernel at the upper edge; both preserve cohomology on the kept side.

use std::collections::BTreeMap;

use crate::error::KernelError;
use crate::grmod::{
    cokernel, kernel_of_module_map, lift_over_quotient, FreeModule, GradedMap, ModuleMap,
    PresentedModule,
};
use crate::grring::{GradedRing, ModElem, Poly};

use super::free_complex::FreeComplex;

#[derive(Debug, Clone)]
pub struct ModuleComplex {
    ring: GradedRing,
    lo: i64,
    terms: Vec<PresentedModule>,
    diffs: Vec<ModuleMap>,
}

impl ModuleComplex {
    pub fn new(
        ring: GradedRing,
        lo: i64,
        terms: Vec<PresentedModule>,
        diffs: Vec<ModuleMap>,
    ) -> Result<ModuleComplex, KernelError> {
        if terms.is_empty() {
            return Ok(ModuleComplex::zero(ring));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(KernelError::DimensionMismatch {
                context: format!(
                    "{} terms need {} differentials, got {}",
                    terms.len(),
                    terms.len() - 1,
                    diffs.len()
                ),
            });
        }
        for (k, d) in diffs.iter().enumerate() {
            if !d.source().same_presentation(&terms[k])
                || !d.target().same_presentation(&terms[k + 1])
            {
                return Err(KernelError::DimensionMismatch {
                    context: format!(
                        "differential at index {} does not match its terms",
                        lo + k as i64
                    ),
                });
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k + 1].compose(&diffs[k]).is_zero_map()? {
                return Err(KernelError::NotAComplex { index: lo + k as i64 });
            }
        }
        Ok(ModuleComplex { ring, lo, terms, diffs })
    }

    pub fn zero(ring: GradedRing) -> ModuleComplex {
        let z = PresentedModule::free(FreeModule::new(ring.clone(), Vec::new()));
        ModuleComplex { ring, lo: 0, terms: vec![z], diffs: Vec::new() }
    }

    pub fn concentrated(module: PresentedModule, index: i64) -> ModuleComplex {
        ModuleComplex {
            ring: module.ring().clone(),
            lo: index,
            terms: vec![module],
            diffs: Vec::new(),
        }
    }

    /// The two-term complex [M -> N] in indices [-1, 0]; this is the cone
    /// of f viewed as a map of complexes concentrated in index 0.
    pub fn of_map(f: &ModuleMap) -> ModuleComplex {
        ModuleComplex {
            ring: f.ring().clone(),
            lo: -1,
            terms: vec![f.source().clone(), f.target().clone()],
            diffs: vec![f.clone()],
        }
    }

    /// View a fully materialized free complex as a module complex.
    pub fn from_free(x: &FreeComplex) -> Result<ModuleComplex, KernelError> {
        if x.band().is_some() {
            return Err(KernelError::Unsupported {
                context: "a banded free complex cannot be viewed as a module complex; \
                          soft-truncate it first"
                    .into(),
            });
        }
        let terms: Vec<PresentedModule> =
            (x.lo()..=x.hi()).map(|j| PresentedModule::free(x.term(j))).collect();
        let mut diffs = Vec::new();
        for j in x.lo()..x.hi() {
            diffs.push(ModuleMap::new_unchecked(
                terms[(j - x.lo()) as usize].clone(),
                terms[(j + 1 - x.lo()) as usize].clone(),
                x.diff(j),
            ));
        }
        ModuleComplex::new(x.ring().clone(), x.lo(), terms, diffs)
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, j: i64) -> PresentedModule {
        if j < self.lo || j > self.hi() {
            PresentedModule::free(FreeModule::new(self.ring.clone(), Vec::new()))
        } else {
            self.terms[(j - self.lo) as usize].clone()
        }
    }

    pub fn diff(&self, j: i64) -> ModuleMap {
        let k = j - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            ModuleMap::zero(&self.term(j), &self.term(j + 1))
        }
    }

    /// shift(X, n)^j = X^{j+n} with differentials scaled by (-1)^n.
    pub fn shift(&self, n: i64) -> ModuleComplex {
        let flip = n.rem_euclid(2) == 1;
        ModuleComplex {
            ring: self.ring.clone(),
            lo: self.lo - n,
            terms: self.terms.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| if flip { d.neg() } else { d.clone() })
                .collect(),
        }
    }

    pub fn twist(&self, e: i64) -> ModuleComplex {
        ModuleComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.twist(e)).collect(),
            diffs: self.diffs.iter().map(|d| d.twist(e)).collect(),
        }
    }

    /// ker d^j / im d^{j-1}, zero outside the window.
    pub fn cohomology(&self, j: i64) -> Result<PresentedModule, KernelError> {
        if j < self.lo || j > self.hi() {
            return Ok(PresentedModule::free(FreeModule::new(self.ring.clone(), Vec::new())));
        }
        let t = self.term(j);
        let incoming = self.diff(j - 1);
        let mut rel_cols = t.relations().cols().to_vec();
        rel_cols.extend_from_slice(incoming.map().cols());
        let rel_src = t
            .relations()
            .source()
            .direct_sum(&FreeModule::new(self.ring.clone(), incoming.source().gens().degrees().to_vec()));
        let rel = GradedMap::new(rel_src, t.gens().clone(), rel_cols)?;
        let source = PresentedModule::new(t.gens().clone(), rel);
        // The outgoing differential respects the enlarged relations because
        // d compose d vanishes.
        let f = ModuleMap::new_unchecked(source, self.term(j + 1), self.diff(j).map().clone());
        let (h, _) = kernel_of_module_map(&f)?;
        Ok(h)
    }
}

/// Degreewise map of module complexes commuting with the differentials.
#[derive(Debug, Clone)]
pub struct ModuleChainMap {
    source: ModuleComplex,
    target: ModuleComplex,
    lo: i64,
    maps: Vec<ModuleMap>,
}

impl ModuleChainMap {
    pub fn new(
        source: ModuleComplex,
        target: ModuleComplex,
        given: BTreeMap<i64, ModuleMap>,
    ) -> Result<ModuleChainMap, KernelError> {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        for (j, m) in &given {
            if *j < lo || *j > hi {
                if !m.map().is_zero() {
                    return Err(KernelError::DimensionMismatch {
                        context: format!("chain map component at {j} is outside both windows"),
                    });
                }
                continue;
            }
            if !m.source().same_presentation(&source.term(*j))
                || !m.target().same_presentation(&target.term(*j))
            {
                return Err(KernelError::DimensionMismatch {
                    context: format!("chain map component at {j} does not match the terms"),
                });
            }
        }
        let maps: Vec<ModuleMap> = (lo..=hi)
            .map(|j| {
                given
                    .get(&j)
                    .cloned()
                    .unwrap_or_else(|| ModuleMap::zero(&source.term(j), &target.term(j)))
            })
            .collect();
        let cm = ModuleChainMap { source, target, lo, maps };
        for j in lo..=hi {
            let left = cm.target.diff(j).compose(&cm.component(j));
            let right = cm.component(j + 1).compose(&cm.source.diff(j));
            if !left.sub(&right).is_zero_map()? {
                return Err(KernelError::NotChainMap { index: j });
            }
        }
        Ok(cm)
    }

    pub fn identity(x: &ModuleComplex) -> ModuleChainMap {
        let maps = (x.lo()..=x.hi()).map(|j| ModuleMap::identity(&x.term(j))).collect();
        ModuleChainMap { source: x.clone(), target: x.clone(), lo: x.lo(), maps }
    }

    pub fn source(&self) -> &ModuleComplex {
        &self.source
    }

    pub fn target(&self) -> &ModuleComplex {
        &self.target
    }

    pub fn component(&self, j: i64) -> ModuleMap {
        let k = j - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            ModuleMap::zero(&self.source.term(j), &self.target.term(j))
        }
    }
}

/// Mapping cone of module complexes: cone(f)^n = X^{n+1} (+) Y^n with
/// differential [[-d_X, 0], [f, d_Y]].
pub fn cone_modules(f: &ModuleChainMap) -> Result<ModuleComplex, KernelError> {
    let x = f.source();
    let y = f.target();
    let ring = x.ring().clone();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let mut terms = Vec::new();
    for n in lo..=hi {
        terms.push(x.term(n + 1).direct_sum(&y.term(n)));
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let src = &terms[(n - lo) as usize];
        let tgt = &terms[(n + 1 - lo) as usize];
        let dx = x.diff(n + 1);
        let dy = y.diff(n);
        let fc = f.component(n + 1);
        let x_rank = x.term(n + 1).gens().rank();
        let x_rank_next = x.term(n + 2).gens().rank();
        let mut cols = Vec::with_capacity(src.gens().rank());
        for s in 0..x_rank {
            let mut comps = dx.map().cols()[s].neg().comps;
            comps.extend(fc.map().cols()[s].comps.clone());
            cols.push(ModElem::from_comps(comps));
        }
        for s in 0..y.term(n).gens().rank() {
            let mut comps = vec![Poly::zero(); x_rank_next];
            comps.extend(dy.map().cols()[s].comps.clone());
            cols.push(ModElem::from_comps(comps));
        }
        let gm = GradedMap::new(src.gens().clone(), tgt.gens().clone(), cols)?;
        // Block maps of module maps respect the direct-sum relations.
        diffs.push(ModuleMap::new_unchecked(src.clone(), tgt.clone(), gm));
    }
    ModuleComplex::new(ring, lo, terms, diffs)
}

/// Bottom truncation of a free complex at edge -K: free terms above the
/// edge, the cokernel of the incoming differential at it. Cohomology at
/// indices >= -K is preserved; for a banded complex the edge must lie
/// strictly inside the window so the incoming differential is stored.
pub fn soft_truncate_free(x: &FreeComplex, k: i64) -> Result<ModuleComplex, KernelError> {
    let edge = -k;
    if x.band().is_some() && edge <= x.lo() {
        return Err(KernelError::WindowExceeded { index: edge, lo: x.lo(), hi: x.hi() });
    }
    if edge > x.hi() {
        return Ok(ModuleComplex::zero(x.ring().clone()));
    }
    let edge = edge.max(x.lo());
    let ring = x.ring().clone();
    let mut terms = Vec::new();
    for j in edge..=x.hi() {
        if j == edge {
            let incoming = ModuleMap::new_unchecked(
                PresentedModule::free(x.term(j - 1)),
                PresentedModule::free(x.term(j)),
                x.diff(j - 1),
            );
            terms.push(cokernel(&incoming));
        } else {
            terms.push(PresentedModule::free(x.term(j)));
        }
    }
    let mut diffs = Vec::new();
    for j in edge..x.hi() {
        let src = terms[(j - edge) as usize].clone();
        let tgt = terms[(j + 1 - edge) as usize].clone();
        // At the edge the map is well defined because d compose d = 0.
        diffs.push(ModuleMap::new_unchecked(src, tgt, x.diff(j)));
    }
    ModuleComplex::new(ring, edge, terms, diffs)
}

/// Bottom truncation of a module complex at edge -K, with the cokernel of
/// the incoming differential inserted at the edge.
pub fn soft_truncate(x: &ModuleComplex, k: i64) -> Result<ModuleComplex, KernelError> {
    let edge = -k;
    if edge > x.hi() {
        return Ok(ModuleComplex::zero(x.ring().clone()));
    }
    if edge <= x.lo() {
        return Ok(x.clone());
    }
    let ring = x.ring().clone();
    let mut terms = Vec::new();
    for j in edge..=x.hi() {
        if j == edge {
            terms.push(cokernel(&x.diff(j - 1)));
        } else {
            terms.push(x.term(j));
        }
    }
    let mut diffs = Vec::new();
    for j in edge..x.hi() {
        let src = terms[(j - edge) as usize].clone();
        let tgt = terms[(j + 1 - edge) as usize].clone();
        diffs.push(ModuleMap::new_unchecked(src, tgt, x.diff(j).map().clone()));
    }
    ModuleComplex::new(ring, edge, terms, diffs)
}

/// Top truncation of a free complex at edge K: free terms below the edge
/// and the kernel W = ker(d^K) at it, with the incoming differential
/// corestricted onto W. Returns the truncated complex together with W.
/// Cohomology at indices <= K is preserved.
pub fn top_truncate(
    x: &FreeComplex,
    k: i64,
) -> Result<(ModuleComplex, PresentedModule), KernelError> {
    if x.band().is_some() {
        return Err(KernelError::Unsupported {
            context: "top truncation of a banded complex".into(),
        });
    }
    let ring = x.ring().clone();
    if k >= x.hi() {
        let w = PresentedModule::free(x.term(x.hi()));
        return Ok((ModuleComplex::from_free(x)?, w));
    }
    if k < x.lo() {
        return Ok((
            ModuleComplex::zero(ring.clone()),
            PresentedModule::free(FreeModule::new(ring, Vec::new())),
        ));
    }
    let f = ModuleMap::new_unchecked(
        PresentedModule::free(x.term(k)),
        PresentedModule::free(x.term(k + 1)),
        x.diff(k),
    );
    let (w, incl) = kernel_of_module_map(&f)?;
    let mut terms = Vec::new();
    for j in x.lo()..k {
        terms.push(PresentedModule::free(x.term(j)));
    }
    terms.push(w.clone());
    let mut diffs = Vec::new();
    for j in x.lo()..k - 1 {
        diffs.push(ModuleMap::new_unchecked(
            terms[(j - x.lo()) as usize].clone(),
            terms[(j + 1 - x.lo()) as usize].clone(),
            x.diff(j),
        ));
    }
    if k > x.lo() {
        // Corestrict d^{K-1} through the kernel inclusion.
        let d = x.diff(k - 1);
        let mut lifted_cols = Vec::with_capacity(d.source().rank());
        for col in d.cols() {
            let coeffs =
                lift_over_quotient(&ring, x.term(k).rank(), incl.map().cols(), col)?;
            lifted_cols.push(ModElem::from_comps(coeffs));
        }
        let gm = GradedMap::new(x.term(k - 1), w.gens().clone(), lifted_cols)?;
        diffs.push(ModuleMap::new_unchecked(
            terms[(k - 1 - x.lo()) as usize].clone(),
            w.clone(),
            gm,
        ));
    }
    Ok((ModuleComplex::new(ring, x.lo(), terms, diffs)?, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::free_complex::BandCertificate;
    use crate::grmod::{slice_k_dimension, slice_value};
    use crate::grring::{make_ring, MonomialOrder, PolyParser};
    use crate::scalars::Field;

    fn kdim(m: &PresentedModule, e: i64) -> usize {
        slice_k_dimension(m, e).unwrap().expect("finite slice")
    }

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

    fn map1(r: &GradedRing, src: i64, tgt: i64, entry: &str) -> GradedMap {
        GradedMap::new(
            FreeModule::new(r.clone(), vec![src]),
            FreeModule::new(r.clone(), vec![tgt]),
            vec![ModElem::from_comps(vec![pp(r, entry)])],
        )
        .unwrap()
    }

    #[test]
    fn cone_of_module_map_computes_kernel_and_cokernel() {
        // u: A(-1) -> A over k[u]/(u^2): the cone has H^0 = coker = k and
        // H^{-1} = ker = u*A(-1), one dimension in internal degree 2.
        let r = ring(&[("u", 1)], &["u^2"]);
        let a = PresentedModule::ring_module(&r);
        let f = ModuleMap::new(a.twist(-1), a.clone(), map1(&r, 1, 0, "u")).unwrap();
        let c = ModuleComplex::of_map(&f);
        let h0 = c.cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
        let h1 = c.cohomology(-1).unwrap();
        assert_eq!(kdim(&h1, 2), 1);
        assert_eq!(kdim(&h1, 1), 0);
        assert_eq!(kdim(&h1, 3), 0);
    }

    #[test]
    fn cone_of_identity_on_modules_is_exact() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let m = PresentedModule::cyclic_quotient(&r, &[pp(&r, "x^2"), pp(&r, "x*y")]).unwrap();
        let x = ModuleComplex::concentrated(m, 0);
        let c = cone_modules(&ModuleChainMap::identity(&x)).unwrap();
        for j in -2..=1 {
            let h = c.cohomology(j).unwrap();
            for e in 0..4 {
                assert!(slice_value(&h, e).unwrap().is_zero(), "H^{j} degree {e}");
            }
        }
    }

    #[test]
    fn soft_truncate_inserts_the_cokernel_edge() {
        let r = ring(&[("u", 1)], &["u^2"]);
        let t = |d: i64| FreeModule::new(r.clone(), vec![d]);
        let x = FreeComplex::new(
            r.clone(),
            -3,
            vec![t(3), t(2), t(1), t(0)],
            vec![map1(&r, 3, 2, "u"), map1(&r, 2, 1, "u"), map1(&r, 1, 0, "u")],
            Some(BandCertificate { min_gen_degree: 4 }),
        )
        .unwrap();
        let tr = soft_truncate_free(&x, 2).unwrap();
        assert_eq!((tr.lo(), tr.hi()), (-2, 0));
        // Edge term is k(-2): one dimension in internal degree 2.
        let edge = tr.term(-2);
        assert_eq!(kdim(&edge, 2), 1);
        assert_eq!(kdim(&edge, 3), 0);
        let h0 = tr.cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        for j in [-1i64, -2] {
            let h = tr.cohomology(j).unwrap();
            for e in 0..4 {
                assert_eq!(kdim(&h, e), 0, "H^{j} degree {e}");
            }
        }
        // Banded edge at or below lo is refused.
        assert!(matches!(
            soft_truncate_free(&x, 3),
            Err(KernelError::WindowExceeded { .. })
        ));
    }

    #[test]
    fn soft_truncate_is_identity_when_supported() {
        let r = ring(&[("x", 1)], &[]);
        let x = FreeComplex::new(
            r.clone(),
            -1,
            vec![FreeModule::new(r.clone(), vec![1]), FreeModule::new(r.clone(), vec![0])],
            vec![map1(&r, 1, 0, "x")],
            None,
        )
        .unwrap();
        let tr = soft_truncate_free(&x, 5).unwrap();
        assert_eq!((tr.lo(), tr.hi()), (-1, 0));
        for j in -1..=0 {
            assert!(tr.term(j).gens().same_module(&x.term(j)));
            assert_eq!(tr.term(j).relations().source().rank(), 0);
        }
        let again = soft_truncate(&tr, 7).unwrap();
        assert_eq!((again.lo(), again.hi()), (-1, 0));
    }

    #[test]
    fn top_truncate_keeps_low_cohomology_and_returns_the_kernel() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        // Koszul complex of (x, y) in [-2, 0], truncated at -1: exact, with
        // W = ker(d^{-1}) isomorphic to A(-2).
        let t2 = FreeModule::new(r.clone(), vec![2]);
        let t1 = FreeModule::new(r.clone(), vec![1, 1]);
        let t0 = FreeModule::new(r.clone(), vec![0]);
        let d2 = GradedMap::new(
            t2.clone(),
            t1.clone(),
            vec![ModElem::from_comps(vec![pp(&r, "y"), pp(&r, "0-x")])],
        )
        .unwrap();
        let d1 = GradedMap::new(
            t1.clone(),
            t0.clone(),
            vec![ModElem::from_comps(vec![pp(&r, "x")]), ModElem::from_comps(vec![pp(&r, "y")])],
        )
        .unwrap();
        let x =
            FreeComplex::new(r.clone(), -2, vec![t2, t1, t0], vec![d2, d1], None).unwrap();
        let (tr, w) = top_truncate(&x, -1).unwrap();
        assert_eq!((tr.lo(), tr.hi()), (-2, -1));
        for e in 0..4 {
            // A(-2) over k[x, y] has slice dimension e - 1 once e >= 2.
            let expect = if e < 2 { 0 } else { (e - 1) as usize };
            assert_eq!(kdim(&w, e), expect, "W degree {e}");
        }
        for j in -3..=0 {
            let h = tr.cohomology(j).unwrap();
            for e in 0..4 {
                assert_eq!(kdim(&h, e), 0, "H^{j} degree {e}");
            }
        }
    }

    #[test]
    fn top_truncate_above_window_is_the_whole_complex() {
        let r = ring(&[("x", 1)], &[]);
        let x = FreeComplex::new(
            r.clone(),
            -1,
            vec![FreeModule::new(r.clone(), vec![1]), FreeModule::new(r.clone(), vec![0])],
            vec![map1(&r, 1, 0, "x")],
            None,
        )
        .unwrap();
        let (tr, w) = top_truncate(&x, 3).unwrap();
        assert_eq!((tr.lo(), tr.hi()), (-1, 0));
        assert!(w.gens().same_module(&x.term(0)));
        let h0 = tr.cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
    }

    #[test]
    fn shift_and_twist_relabel_module_complexes() {
        let r = ring(&[("u", 1)], &["u^2"]);
        let a = PresentedModule::ring_module(&r);
        let f = ModuleMap::new(a.twist(-1), a.clone(), map1(&r, 1, 0, "u")).unwrap();
        let c = ModuleComplex::of_map(&f);
        let s = c.shift(2);
        assert_eq!((s.lo(), s.hi()), (-3, -2));
        let h = s.cohomology(-2).unwrap();
        assert_eq!(kdim(&h, 0), 1);
        let tw = c.twist(3);
        let h = tw.cohomology(0).unwrap();
        assert_eq!(kdim(&h, -3), 1);
        assert_eq!(kdim(&h, 0), 0);
    }
}
