//! Graded Hom between presented modules.
//!
//! A degree-e homomorphism M -> N is a degree-0 map M -> N(e), determined by
//! images n_t of the generators of M subject to one condition per relation
//! column r of M: sum_t r_t * n_t = 0 in N. Each n_t ranges over the slice
//! of N in degree g_t + e and each condition lives in the slice at
//! deg(r) + e, so the Hom space is a finite linear problem over the base:
//! a k-nullspace over a FIELD (or bounded GENERAL) base, and a k[x]-kernel
//! mod image over a UNIVARIATE_PID base.

use crate::error::KernelError;
use crate::grmod::free::GradedMap;
use crate::grmod::presented::{ModuleMap, PresentedModule};
use crate::grmod::slice::{KSliceModel, PidSliceModel, SliceValue};
use crate::grring::{BaseClass, ModElem};
use crate::scalars::{ExactMatrix, FieldElement, UniPoly, UniPolyMatrix};

/// The degree-e Hom space: generators as honest module maps, and the
/// canonical value of the space over the base ring.
#[derive(Debug, Clone)]
pub struct HomGraded {
    pub maps: Vec<ModuleMap>,
    pub value: SliceValue,
}

/// Computes Hom(M, N)_e. The returned maps are a k-basis over a FIELD or
/// bounded GENERAL base, and k[x]-module generators over a PID base (where
/// some listed generators may be the zero map if the space has torsion
/// presentation artifacts; the value is always canonical).
pub fn hom_graded(
    source: &PresentedModule,
    target: &PresentedModule,
    e: i64,
) -> Result<HomGraded, KernelError> {
    debug_assert!(source.ring().same_ring(target.ring()));
    match source.ring().base_class() {
        BaseClass::UnivariatePid { .. } => hom_graded_pid(source, target, e),
        _ => hom_graded_k(source, target, e),
    }
}

fn assemble_map(
    source: &PresentedModule,
    target: &PresentedModule,
    e: i64,
    images: Vec<ModElem>,
) -> Result<ModuleMap, KernelError> {
    let twisted = target.twist(e);
    let frame = GradedMap::new(source.gens().clone(), twisted.gens().clone(), images)?;
    ModuleMap::new(source.clone(), twisted, frame)
}

fn hom_graded_k(
    source: &PresentedModule,
    target: &PresentedModule,
    e: i64,
) -> Result<HomGraded, KernelError> {
    let ring = source.ring().clone();
    let field = ring.field();
    let ngens = source.gens().rank();
    let tgt_rank = target.gens().rank();

    let models: Vec<KSliceModel> = (0..ngens)
        .map(|t| KSliceModel::build(target, source.gens().degree(t) + e))
        .collect::<Result<_, _>>()?;
    let offsets: Vec<usize> = models
        .iter()
        .scan(0usize, |acc, m| {
            let o = *acc;
            *acc += m.dim();
            Some(o)
        })
        .collect();
    let total: usize = models.iter().map(KSliceModel::dim).sum();

    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for (s, rel) in source.relations().cols().iter().enumerate() {
        let cond_degree = source.relations().source().degree(s) + e;
        let cond = KSliceModel::build(target, cond_degree)?;
        if cond.dim() == 0 {
            continue;
        }
        let mut block: Vec<Vec<FieldElement>> = vec![vec![field.zero(); total]; cond.dim()];
        for (t, model) in models.iter().enumerate() {
            let r_t = &rel.comps[t];
            if r_t.is_zero() || model.dim() == 0 {
                continue;
            }
            for (b, basis_el) in model.basis_elements(tgt_rank).iter().enumerate() {
                // Image of the basis representative under multiplication by
                // the relation entry, in condition-slice coordinates.
                let order = ring.order();
                let mut prod = ModElem::zero(tgt_rank);
                for (m, c) in r_t.terms() {
                    prod = prod.add(order, &basis_el.mul_term(m, c));
                }
                let coords = cond.quotient_coords(&prod);
                for (i, v) in coords.into_iter().enumerate() {
                    block[i][offsets[t] + b] = v;
                }
            }
        }
        rows.extend(block);
    }
    let condition_matrix = ExactMatrix::from_rows(field, total, rows);
    let null = condition_matrix.nullspace_basis();
    let mut maps = Vec::with_capacity(null.len());
    for vec in &null {
        let images: Vec<ModElem> = (0..ngens)
            .map(|t| {
                let c = &vec[offsets[t]..offsets[t] + models[t].dim()];
                models[t].representative(c, tgt_rank)
            })
            .collect();
        maps.push(assemble_map(source, target, e, images)?);
    }
    let dim = maps.len();
    Ok(HomGraded { maps, value: SliceValue::Dim(dim) })
}

fn hom_graded_pid(
    source: &PresentedModule,
    target: &PresentedModule,
    e: i64,
) -> Result<HomGraded, KernelError> {
    let ring = source.ring().clone();
    let field = ring.field();
    let ngens = source.gens().rank();
    let tgt_rank = target.gens().rank();

    let models: Vec<PidSliceModel> = (0..ngens)
        .map(|t| PidSliceModel::build(target, source.gens().degree(t) + e))
        .collect::<Result<_, _>>()?;
    let offsets: Vec<usize> = models
        .iter()
        .scan(0usize, |acc, m| {
            let o = *acc;
            *acc += m.npairs();
            Some(o)
        })
        .collect();
    let total_u: usize = models.iter().map(PidSliceModel::npairs).sum();

    // Stacked system [C | P]: C carries multiplication by relation entries,
    // P the presentation columns of each condition slice.
    let conds: Vec<PidSliceModel> = source
        .relations()
        .cols()
        .iter()
        .enumerate()
        .map(|(s, _)| {
            PidSliceModel::build(target, source.relations().source().degree(s) + e)
        })
        .collect::<Result<_, _>>()?;
    let total_rows: usize = conds.iter().map(PidSliceModel::npairs).sum();
    let total_p: usize = conds.iter().map(|c| c.presentation().ncols()).sum();
    let mut big = UniPolyMatrix::zero(field, total_rows, total_u + total_p);
    let mut row_off = 0usize;
    let mut p_off = total_u;
    for (s, cond) in conds.iter().enumerate() {
        let rel = &source.relations().cols()[s];
        for (t, model) in models.iter().enumerate() {
            let r_t = &rel.comps[t];
            if r_t.is_zero() {
                continue;
            }
            for (q, (u, tau)) in model.pairs().iter().enumerate() {
                let order = ring.order();
                let mut elem = ModElem::zero(tgt_rank);
                elem.comps[*tau] =
                    crate::grring::Poly::term(u.clone(), field.one());
                let mut prod = ModElem::zero(tgt_rank);
                for (m, c) in r_t.terms() {
                    prod = prod.add(order, &elem.mul_term(m, c));
                }
                let coords = cond.pair_coords(&prod);
                for (i, v) in coords.into_iter().enumerate() {
                    if !v.is_zero() {
                        big.set_entry(row_off + i, offsets[t] + q, v);
                    }
                }
            }
        }
        let p = cond.presentation();
        for j in 0..p.ncols() {
            for i in 0..p.nrows() {
                let v = p.entry(i, j);
                if !v.is_zero() {
                    big.set_entry(row_off + i, p_off + j, v.clone());
                }
            }
        }
        row_off += cond.npairs();
        p_off += p.ncols();
    }

    let kernel = big.kernel_basis();
    // Generators of the Hom module: u-parts of the kernel basis.
    let b_cols: Vec<Vec<UniPoly>> =
        kernel.iter().map(|v| v[..total_u].to_vec()).collect();
    let mut maps = Vec::new();
    for col in &b_cols {
        let images: Vec<ModElem> = (0..ngens)
            .map(|t| {
                let c = &col[offsets[t]..offsets[t] + models[t].npairs()];
                models[t].from_pair_coords(c, tgt_rank)
            })
            .collect();
        maps.push(assemble_map(source, target, e, images)?);
    }

    // Canonical value: relations among the generators modulo the unknowns'
    // own presentations, then the Smith normal form of that cokernel.
    let pres_cols: usize = models.iter().map(|m| m.presentation().ncols()).sum();
    let mut rel_matrix = UniPolyMatrix::zero(field, total_u, b_cols.len() + pres_cols);
    for (j, col) in b_cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                rel_matrix.set_entry(i, j, v.clone());
            }
        }
    }
    let mut c_off = b_cols.len();
    for (t, model) in models.iter().enumerate() {
        let p = model.presentation();
        for j in 0..p.ncols() {
            for i in 0..p.nrows() {
                let v = p.entry(i, j);
                if !v.is_zero() {
                    rel_matrix.set_entry(offsets[t] + i, c_off + j, v.clone());
                }
            }
        }
        c_off += p.ncols();
    }
    let rel_kernel = rel_matrix.kernel_basis();
    let mut hom_pres = UniPolyMatrix::zero(field, b_cols.len(), rel_kernel.len());
    for (j, v) in rel_kernel.iter().enumerate() {
        #[allow(clippy::needless_range_loop)]
        for i in 0..b_cols.len() {
            if !v[i].is_zero() {
                hom_pres.set_entry(i, j, v[i].clone());
            }
        }
    }
    let value = SliceValue::Shape(hom_pres.coker_shape());
    Ok(HomGraded { maps, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmod::free::FreeModule;
    use crate::grring::{make_ring, GradedRing, MonomialOrder, Poly, PolyParser};
    use crate::scalars::Field;

    fn ring(vars: &[(&str, i64)], rels: &[&str]) -> GradedRing {
        let names: Vec<(String, i64)> =
            vars.iter().map(|(n, w)| (n.to_string(), *w)).collect();
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

    fn cyclic(r: &GradedRing, rels: &[&str]) -> PresentedModule {
        let polys: Vec<Poly> = rels.iter().map(|s| pp(r, s)).collect();
        PresentedModule::cyclic_quotient(r, &polys).unwrap()
    }

    #[test]
    fn homs_from_the_ring_are_slices() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let a = PresentedModule::ring_module(&r);
        for (e, d) in [(-1i64, 0usize), (0, 1), (1, 2), (2, 3)] {
            let h = hom_graded(&a, &a, e).unwrap();
            assert_eq!(h.value, SliceValue::Dim(d), "degree {e}");
            assert_eq!(h.maps.len(), d);
        }
    }

    #[test]
    fn torsion_to_free_has_no_maps() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let m = cyclic(&r, &["x"]);
        let a = PresentedModule::ring_module(&r);
        for e in -1i64..=3 {
            assert_eq!(hom_graded(&m, &a, e).unwrap().value, SliceValue::Dim(0));
        }
    }

    #[test]
    fn annihilator_maps_into_the_cross_ring() {
        // Over A = k[x,y]/(xy): Hom(A/(x), A)_e = (y)_e, one dimension in
        // each degree e >= 1.
        let r = ring(&[("x", 1), ("y", 1)], &["x*y"]);
        let m = cyclic(&r, &["x"]);
        let a = PresentedModule::ring_module(&r);
        assert_eq!(hom_graded(&m, &a, 0).unwrap().value, SliceValue::Dim(0));
        let h = hom_graded(&m, &a, 1).unwrap();
        assert_eq!(h.value, SliceValue::Dim(1));
        // The generator image is a scalar multiple of y.
        let img = &h.maps[0].map().cols()[0].comps[0];
        assert_eq!(img.num_terms(), 1);
        assert_eq!(img.leading_term().unwrap().0, &crate::grring::Monomial(vec![0, 1]));
    }

    #[test]
    fn endomorphisms_of_the_residue_field() {
        let r = ring(&[("u", 1)], &["u^2"]);
        let k = cyclic(&r, &["u"]);
        assert_eq!(hom_graded(&k, &k, 0).unwrap().value, SliceValue::Dim(1));
        assert_eq!(hom_graded(&k, &k, 1).unwrap().value, SliceValue::Dim(0));
        // Hom(k, A)_1 = socle = (u): one map, gen -> u.
        let a = PresentedModule::ring_module(&r);
        let h = hom_graded(&k, &a, 1).unwrap();
        assert_eq!(h.value, SliceValue::Dim(1));
    }

    #[test]
    fn pid_base_hom_shapes() {
        // A = k[x][T]: Hom(A, A)_0 = k[x], free of rank 1.
        let r = ring(&[("x", 0), ("T", 1)], &[]);
        let a = PresentedModule::ring_module(&r);
        let h = hom_graded(&a, &a, 0).unwrap();
        match &h.value {
            SliceValue::Shape(s) => {
                assert_eq!(s.free_rank, 1);
                assert!(s.torsion.is_empty());
            }
            v => panic!("unexpected {v:?}"),
        }

        // Over A = k[x][T]/(x^2 T): Hom(A/(T), A) = ann(T) = x^2*A, which is
        // x^2*k[x] in degree 0, a free rank-1 k[x]-module; in degree 1 the
        // image c(x)T must satisfy both c = 0 mod x^2 (to kill T*c(x)T) and
        // live in A_1 = k[x]/(x^2), leaving nothing.
        let r2 = ring(&[("x", 0), ("T", 1)], &["x^2*T"]);
        let m = cyclic(&r2, &["T"]);
        let a2 = PresentedModule::ring_module(&r2);
        let h0 = hom_graded(&m, &a2, 0).unwrap();
        match &h0.value {
            SliceValue::Shape(s) => {
                assert_eq!(s.free_rank, 1);
                assert!(s.torsion.is_empty());
            }
            v => panic!("unexpected {v:?}"),
        }
        let h1 = hom_graded(&m, &a2, 1).unwrap();
        assert!(h1.value.is_zero());
    }

    #[test]
    fn hom_value_counts_independent_maps_between_sums() {
        // Hom(A(-1) + A, A)_0 over k[x,y]: first summand contributes A_1
        // (2 dims), second contributes A_0 (1 dim).
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let m = PresentedModule::free(FreeModule::new(r.clone(), vec![1, 0]));
        let a = PresentedModule::ring_module(&r);
        assert_eq!(hom_graded(&m, &a, 0).unwrap().value, SliceValue::Dim(3));
    }
}
