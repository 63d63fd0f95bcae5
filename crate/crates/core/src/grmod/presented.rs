//! Finitely presented graded modules M = coker(relations) and maps between
//! them.
//!
//! All kernel and syzygy computations over the quotient ring A = P/I are
//! performed in the free polynomial ring P by adjoining a column g*e_t for
//! every Groebner basis element g of I and every target generator t, then
//! projecting syzygies back to the module columns. Normal forms modulo a
//! presentation use the Groebner basis of [relation columns | I-columns],
//! which makes element equality decidable and canonical.

use crate::error::KernelError;
use crate::grmod::free::{FreeModule, GradedMap};
use crate::grring::{groebner_with_syzygies, GradedRing, GroebnerBasis, ModElem, Poly};

/// Appends the ring-relation columns g*e_t to `cols`.
pub fn adjoin_ring_relations(ring: &GradedRing, rank: usize, cols: &[ModElem]) -> Vec<ModElem> {
    let mut out = cols.to_vec();
    let gb = ring.relation_gb_polys();
    for t in 0..rank {
        for g in &gb {
            let mut col = ModElem::zero(rank);
            col.comps[t] = g.clone();
            out.push(col);
        }
    }
    out
}

/// Generators of the syzygy module of `cols` over the quotient ring, as
/// vectors over the columns together with their degrees. `col_degrees[s]` is
/// the degree of `cols[s]` as an element of the ambient free module.
///
/// Every returned column is homogeneous and nonzero; entries are in normal
/// form modulo the ring relations.
pub fn syzygies_over_quotient(
    ring: &GradedRing,
    rank: usize,
    cols: &[ModElem],
    col_degrees: &[i64],
) -> Result<(Vec<ModElem>, Vec<i64>), KernelError> {
    debug_assert_eq!(cols.len(), col_degrees.len());
    let inputs = adjoin_ring_relations(ring, rank, cols);
    let (_, syz) = groebner_with_syzygies(ring.order(), rank, &inputs)?;
    let mut out_cols = Vec::new();
    let mut out_degrees = Vec::new();
    for z in syz {
        let comps: Vec<Poly> =
            z[..cols.len()].iter().map(|p| ring.normal_form(p)).collect();
        let col = ModElem::from_comps(comps);
        if col.is_zero() {
            continue;
        }
        let mut degree: Option<i64> = None;
        for (s, p) in col.comps.iter().enumerate() {
            if let Ok(Some(d)) = p.homogeneous_degree(ring.weights()) {
                let total = d + col_degrees[s];
                match degree {
                    None => degree = Some(total),
                    Some(prev) => {
                        assert_eq!(prev, total, "syzygy column is not homogeneous");
                    }
                }
            } else if !p.is_zero() {
                panic!("syzygy entry is not homogeneous");
            }
        }
        out_cols.push(col);
        out_degrees.push(degree.expect("nonzero column has a degree"));
    }
    Ok((out_cols, out_degrees))
}

/// Expresses `target` as a combination of `cols` over the quotient ring, or
/// returns `NotInImage`. The returned coefficients are verified by
/// recomposition before being handed back.
pub fn lift_over_quotient(
    ring: &GradedRing,
    rank: usize,
    cols: &[ModElem],
    target: &ModElem,
) -> Result<Vec<Poly>, KernelError> {
    let inputs = adjoin_ring_relations(ring, rank, cols);
    let gb = crate::grring::groebner_module(ring.order(), rank, &inputs)?;
    let expr = gb.lift(target).ok_or(KernelError::NotInImage)?;
    let coeffs: Vec<Poly> =
        expr[..cols.len()].iter().map(|p| ring.normal_form(p)).collect();
    // The discarded tail multiplies I-columns, so the combination holds
    // modulo I; verify that componentwise.
    let order = ring.order();
    let mut acc = target.neg();
    for (c, col) in coeffs.iter().zip(cols) {
        for (m, k) in c.terms() {
            acc = acc.add(order, &col.mul_term(m, k));
        }
    }
    for p in &acc.comps {
        assert!(ring.normal_form(p).is_zero(), "verified lift failed to recompose");
    }
    Ok(coeffs)
}

/// Finitely presented graded module: the cokernel of `relations`.
#[derive(Debug, Clone)]
pub struct PresentedModule {
    gens: FreeModule,
    relations: GradedMap,
}

impl PresentedModule {
    pub fn new(gens: FreeModule, relations: GradedMap) -> Self {
        debug_assert!(relations.target().same_module(&gens));
        PresentedModule { gens, relations }
    }

    /// The free module itself, with an empty relation block.
    pub fn free(gens: FreeModule) -> Self {
        let rel = GradedMap::zero(FreeModule::new(gens.ring().clone(), vec![]), gens.clone());
        PresentedModule { gens, relations: rel }
    }

    /// The ring as a module over itself, generated in degree 0.
    pub fn ring_module(ring: &GradedRing) -> Self {
        PresentedModule::free(FreeModule::new(ring.clone(), vec![0]))
    }

    /// Cyclic module A/(columns) with generator in degree 0.
    pub fn cyclic_quotient(ring: &GradedRing, ideal_gens: &[Poly]) -> Result<Self, KernelError> {
        let gens = FreeModule::new(ring.clone(), vec![0]);
        let mut degrees = Vec::new();
        for (i, p) in ideal_gens.iter().enumerate() {
            match p.homogeneous_degree(ring.weights()) {
                Ok(Some(d)) => degrees.push(d),
                Ok(None) => degrees.push(0),
                Err(detail) => {
                    return Err(KernelError::InhomogeneousRelation { index: i, detail });
                }
            }
        }
        let src = FreeModule::new(ring.clone(), degrees);
        let cols = ideal_gens.iter().map(|p| ModElem::from_comps(vec![p.clone()])).collect();
        let rel = GradedMap::new(src, gens.clone(), cols)?;
        Ok(PresentedModule { gens, relations: rel })
    }

    pub fn ring(&self) -> &GradedRing {
        self.gens.ring()
    }

    pub fn gens(&self) -> &FreeModule {
        &self.gens
    }

    pub fn relations(&self) -> &GradedMap {
        &self.relations
    }

    pub fn rank_of_presentation(&self) -> usize {
        self.gens.rank()
    }

    pub fn twist(&self, e: i64) -> PresentedModule {
        PresentedModule { gens: self.gens.twist(e), relations: self.relations.twist(e) }
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        PresentedModule {
            gens: self.gens.direct_sum(&other.gens),
            relations: self.relations.direct_sum(&other.relations),
        }
    }

    /// Groebner basis of [relation columns | I-columns]; normal forms against
    /// it are canonical representatives of module elements.
    pub fn presentation_gb(&self) -> Result<GroebnerBasis, KernelError> {
        let inputs =
            adjoin_ring_relations(self.ring(), self.gens.rank(), self.relations.cols());
        crate::grring::groebner_module(self.ring().order(), self.gens.rank(), &inputs)
    }

    pub fn element_is_zero(&self, v: &ModElem) -> Result<bool, KernelError> {
        Ok(self.presentation_gb()?.normal_form(v).is_zero())
    }

    pub fn is_zero_module(&self) -> Result<bool, KernelError> {
        let gb = self.presentation_gb()?;
        let nvars = self.ring().nvars();
        let one = self.ring().field().one();
        for t in 0..self.gens.rank() {
            let mut e = ModElem::zero(self.gens.rank());
            e.comps[t] = Poly::term(crate::grring::Monomial::one(nvars), one.clone());
            if !gb.normal_form(&e).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Literal equality of gens frames and relation columns; a syntactic
    /// check, not an isomorphism test.
    pub fn same_presentation(&self, other: &PresentedModule) -> bool {
        self.gens.same_module(&other.gens)
            && self.relations.source().same_module(other.relations.source())
            && self.relations.cols() == other.relations.cols()
    }

    pub fn min_gen_degree(&self) -> Option<i64> {
        self.gens.degrees().iter().copied().min()
    }

    pub fn max_gen_degree(&self) -> Option<i64> {
        self.gens.degrees().iter().copied().max()
    }
}

/// Map of presented modules, stored as a map between their generator frames.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    map: GradedMap,
}

impl ModuleMap {
    /// Checks that the generator-frame map sends source relations into the
    /// target's relation submodule, i.e. descends to the cokernels.
    pub fn new(
        source: PresentedModule,
        target: PresentedModule,
        map: GradedMap,
    ) -> Result<ModuleMap, KernelError> {
        if !map.source().same_module(source.gens()) || !map.target().same_module(target.gens()) {
            return Err(KernelError::DimensionMismatch {
                context: "module map frame does not match the presentations".to_string(),
            });
        }
        let gb = target.presentation_gb()?;
        for (s, rel_col) in source.relations().cols().iter().enumerate() {
            let image = map.apply(rel_col);
            if !gb.normal_form(&image).is_zero() {
                return Err(KernelError::CertificateViolation {
                    reason: format!(
                        "map does not respect relations: image of source relation {s} is nonzero in the target"
                    ),
                });
            }
        }
        Ok(ModuleMap { source, target, map })
    }

    /// Same data, no well-definedness check; for maps correct by
    /// construction.
    pub fn new_unchecked(
        source: PresentedModule,
        target: PresentedModule,
        map: GradedMap,
    ) -> ModuleMap {
        ModuleMap { source, target, map }
    }

    pub fn identity(m: &PresentedModule) -> ModuleMap {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            map: GradedMap::identity(m.gens()),
        }
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> ModuleMap {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            map: GradedMap::zero(source.gens().clone(), target.gens().clone()),
        }
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }

    pub fn ring(&self) -> &GradedRing {
        self.source.ring()
    }

    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&other.map),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.map.add(&other.map),
        }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.map.sub(&other.map),
        }
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), map: self.map.neg() }
    }

    pub fn twist(&self, e: i64) -> ModuleMap {
        ModuleMap {
            source: self.source.twist(e),
            target: self.target.twist(e),
            map: self.map.twist(e),
        }
    }

    /// True when every generator lands in the target's relation submodule.
    pub fn is_zero_map(&self) -> Result<bool, KernelError> {
        let gb = self.target.presentation_gb()?;
        for col in self.map.cols() {
            if !gb.normal_form(col).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Kernel of a module map, presented, with its inclusion into the source.
pub fn kernel_of_module_map(
    f: &ModuleMap,
) -> Result<(PresentedModule, ModuleMap), KernelError> {
    let ring = f.ring().clone();
    let src = f.source();
    let tgt = f.target();
    // Kernel generators: coefficient vectors u with f(u) in the target's
    // relation submodule.
    let mut cols: Vec<ModElem> = f.map().cols().to_vec();
    cols.extend_from_slice(tgt.relations().cols());
    let mut degs: Vec<i64> = src.gens().degrees().to_vec();
    degs.extend_from_slice(tgt.relations().source().degrees());
    let (syz, _) = syzygies_over_quotient(&ring, tgt.gens().rank(), &cols, &degs)?;
    let mut ker_cols = Vec::new();
    let mut ker_degs = Vec::new();
    for z in syz {
        let head = ModElem::from_comps(z.comps[..src.gens().rank()].to_vec());
        if head.is_zero() {
            continue;
        }
        let mut degree = None;
        for (s, p) in head.comps.iter().enumerate() {
            if let Ok(Some(d)) = p.homogeneous_degree(ring.weights()) {
                degree = Some(d + src.gens().degree(s));
                break;
            }
        }
        ker_cols.push(head);
        ker_degs.push(degree.expect("nonzero kernel column has a degree"));
    }
    // Relations of the kernel: coefficient vectors among the kernel
    // generators landing in the source's relation submodule.
    let ker_frame = FreeModule::new(ring.clone(), ker_degs.clone());
    let mut rel_inputs = ker_cols.clone();
    rel_inputs.extend_from_slice(src.relations().cols());
    let mut rel_degs = ker_degs.clone();
    rel_degs.extend_from_slice(src.relations().source().degrees());
    let (rel_syz, rel_syz_degs) =
        syzygies_over_quotient(&ring, src.gens().rank(), &rel_inputs, &rel_degs)?;
    let mut k_rel_cols = Vec::new();
    let mut k_rel_degs = Vec::new();
    for (z, d) in rel_syz.into_iter().zip(rel_syz_degs) {
        let head = ModElem::from_comps(z.comps[..ker_cols.len()].to_vec());
        if head.is_zero() {
            continue;
        }
        k_rel_cols.push(head);
        k_rel_degs.push(d);
    }
    let k_rel_src = FreeModule::new(ring.clone(), k_rel_degs);
    let k_rel = GradedMap::new(k_rel_src, ker_frame.clone(), k_rel_cols)?;
    let kernel = PresentedModule::new(ker_frame.clone(), k_rel);
    let incl_map = GradedMap::new(ker_frame, src.gens().clone(), ker_cols)?;
    let inclusion = ModuleMap::new(kernel.clone(), src.clone(), incl_map)?;
    Ok((kernel, inclusion))
}

/// Kernel of `phi: F -> coker(rel)` where F is free; the common primitive
/// behind truncation relations and cohomology.
pub fn kernel_mod_image(
    phi: &GradedMap,
    rel: &GradedMap,
) -> Result<(PresentedModule, ModuleMap), KernelError> {
    debug_assert!(phi.target().same_module(rel.target()));
    let source = PresentedModule::free(phi.source().clone());
    let target = PresentedModule::new(phi.target().clone(), rel.clone());
    let f = ModuleMap::new_unchecked(source, target, phi.clone());
    kernel_of_module_map(&f)
}

/// Cokernel of a module map: the target with the image columns adjoined to
/// its relations.
pub fn cokernel(f: &ModuleMap) -> PresentedModule {
    let tgt = f.target();
    let mut cols = tgt.relations().cols().to_vec();
    cols.extend_from_slice(f.map().cols());
    let src = tgt
        .relations()
        .source()
        .direct_sum(&FreeModule::new(f.ring().clone(), f.source().gens().degrees().to_vec()));
    let rel = GradedMap::new(src, tgt.gens().clone(), cols)
        .expect("cokernel relations inherit homogeneity");
    PresentedModule::new(tgt.gens().clone(), rel)
}

/// Image of a module map, presented on the images of the source generators,
/// with its inclusion into the target.
pub fn image(f: &ModuleMap) -> Result<(PresentedModule, ModuleMap), KernelError> {
    let ring = f.ring().clone();
    let tgt = f.target();
    let mut gen_cols = Vec::new();
    let mut gen_degs = Vec::new();
    for (s, col) in f.map().cols().iter().enumerate() {
        if col.is_zero() {
            continue;
        }
        gen_cols.push(col.clone());
        gen_degs.push(f.source().gens().degree(s));
    }
    let frame = FreeModule::new(ring.clone(), gen_degs.clone());
    let mut cols = gen_cols.clone();
    cols.extend_from_slice(tgt.relations().cols());
    let mut degs = gen_degs.clone();
    degs.extend_from_slice(tgt.relations().source().degrees());
    let (syz, syz_degs) = syzygies_over_quotient(&ring, tgt.gens().rank(), &cols, &degs)?;
    let mut rel_cols = Vec::new();
    let mut rel_degs = Vec::new();
    for (z, d) in syz.into_iter().zip(syz_degs) {
        let head = ModElem::from_comps(z.comps[..gen_cols.len()].to_vec());
        if head.is_zero() {
            continue;
        }
        rel_cols.push(head);
        rel_degs.push(d);
    }
    let rel_src = FreeModule::new(ring.clone(), rel_degs);
    let rel = GradedMap::new(rel_src, frame.clone(), rel_cols)?;
    let img = PresentedModule::new(frame.clone(), rel);
    let incl = ModuleMap::new(
        img.clone(),
        tgt.clone(),
        GradedMap::new(frame, tgt.gens().clone(), gen_cols)?,
    )?;
    Ok((img, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grring::{make_ring, PolyParser};
    use crate::scalars::Field;

    fn ring(vars: &[(&str, i64)], rels: &[&str]) -> GradedRing {
        let names: Vec<(String, i64)> =
            vars.iter().map(|(n, w)| (n.to_string(), *w)).collect();
        let parser = PolyParser::new(
            Field::Rational,
            vars.iter().map(|(n, _)| n.to_string()).collect(),
            crate::grring::MonomialOrder::new(vars.iter().map(|(_, w)| *w).collect()),
        );
        let rels: Vec<Poly> = rels.iter().map(|s| parser.parse(s, 1, 1).unwrap()).collect();
        make_ring(Field::Rational, names, rels).unwrap()
    }

    fn pp(r: &GradedRing, s: &str) -> Poly {
        PolyParser::for_ring(r).parse(s, 1, 1).unwrap()
    }

    #[test]
    fn koszul_kernel_over_polynomial_ring() {
        // ker(A(-1)^2 --(x, y)--> A) is generated by (y, -x) in degree 2.
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let src = PresentedModule::free(FreeModule::new(r.clone(), vec![1, 1]));
        let tgt = PresentedModule::ring_module(&r);
        let map = GradedMap::new(
            src.gens().clone(),
            tgt.gens().clone(),
            vec![
                ModElem::from_comps(vec![pp(&r, "x")]),
                ModElem::from_comps(vec![pp(&r, "y")]),
            ],
        )
        .unwrap();
        let f = ModuleMap::new(src, tgt, map).unwrap();
        let (k, incl) = kernel_of_module_map(&f).unwrap();
        assert_eq!(k.gens().degrees(), &[2]);
        assert_eq!(k.relations().source().rank(), 0);
        let col = &incl.map().cols()[0];
        assert_eq!(col.comps[0], pp(&r, "y"));
        assert_eq!(col.comps[1], pp(&r, "-x"));
        // The composite f ∘ incl must vanish.
        let composed = f.compose(&incl);
        assert!(composed.is_zero_map().unwrap());
    }

    #[test]
    fn annihilator_kernel_in_coordinate_cross() {
        // Over A = k[x,y]/(xy), the kernel of x: A(-1) -> A is (y), itself
        // presented as (A/(x))(-2).
        let r = ring(&[("x", 1), ("y", 1)], &["x*y"]);
        let src = PresentedModule::free(FreeModule::new(r.clone(), vec![1]));
        let tgt = PresentedModule::ring_module(&r);
        let map = GradedMap::new(
            src.gens().clone(),
            tgt.gens().clone(),
            vec![ModElem::from_comps(vec![pp(&r, "x")])],
        )
        .unwrap();
        let f = ModuleMap::new(src, tgt, map).unwrap();
        let (k, incl) = kernel_of_module_map(&f).unwrap();
        assert_eq!(k.gens().degrees(), &[2]);
        // The harvested generator is -y; the submodule it generates is (y).
        assert_eq!(incl.map().cols()[0].comps[0], pp(&r, "-y"));
        assert_eq!(k.relations().source().rank(), 1);
        assert_eq!(k.relations().entry(0, 0), &pp(&r, "x"));
        assert!(f.compose(&incl).is_zero_map().unwrap());
    }

    #[test]
    fn cokernel_of_identity_is_zero() {
        let r = ring(&[("x", 1)], &[]);
        let m = PresentedModule::free(FreeModule::new(r, vec![0, 1]));
        let c = cokernel(&ModuleMap::identity(&m));
        assert!(c.is_zero_module().unwrap());
        assert!(!m.is_zero_module().unwrap());
    }

    #[test]
    fn module_map_well_definedness_is_checked() {
        // A/(x^2) -> A/(x) by the identity frame is fine; the reverse is not.
        let r = ring(&[("x", 1)], &[]);
        let m2 = PresentedModule::cyclic_quotient(&r, &[pp(&r, "x^2")]).unwrap();
        let m1 = PresentedModule::cyclic_quotient(&r, &[pp(&r, "x")]).unwrap();
        let frame = GradedMap::identity(m1.gens());
        assert!(ModuleMap::new(m2.clone(), m1.clone(), frame.clone()).is_ok());
        let err = ModuleMap::new(m1, m2, frame).unwrap_err();
        assert!(matches!(err, KernelError::CertificateViolation { .. }));
    }

    #[test]
    fn lift_over_quotient_verifies() {
        // In A = k[x,y]/(xy): x^2 is in (x), with certificate x^2 = x * x.
        let r = ring(&[("x", 1), ("y", 1)], &["x*y"]);
        let cols = vec![ModElem::from_comps(vec![pp(&r, "x")])];
        let target = ModElem::from_comps(vec![pp(&r, "x^2")]);
        let coeffs = lift_over_quotient(&r, 1, &cols, &target).unwrap();
        assert_eq!(coeffs[0], pp(&r, "x"));
        // x*y is in (x) even though it is zero in A.
        let zero_target = ModElem::from_comps(vec![pp(&r, "x*y")]);
        assert!(lift_over_quotient(&r, 1, &cols, &zero_target).is_ok());
        // y is not in (x).
        let bad = ModElem::from_comps(vec![pp(&r, "y")]);
        assert!(matches!(
            lift_over_quotient(&r, 1, &cols, &bad).unwrap_err(),
            KernelError::NotInImage
        ));
    }

    #[test]
    fn image_presentation_matches_kernel_data() {
        // Image of (x, y): A(-1)^2 -> A is the irrelevant ideal with the
        // Koszul relation (y, -x).
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let src = PresentedModule::free(FreeModule::new(r.clone(), vec![1, 1]));
        let tgt = PresentedModule::ring_module(&r);
        let map = GradedMap::new(
            src.gens().clone(),
            tgt.gens().clone(),
            vec![
                ModElem::from_comps(vec![pp(&r, "x")]),
                ModElem::from_comps(vec![pp(&r, "y")]),
            ],
        )
        .unwrap();
        let f = ModuleMap::new(src, tgt, map).unwrap();
        let (img, incl) = image(&f).unwrap();
        assert_eq!(img.gens().degrees(), &[1, 1]);
        assert_eq!(img.relations().source().degrees(), &[2]);
        assert!(!img.is_zero_module().unwrap());
        assert!(!incl.is_zero_map().unwrap());
    }
}
