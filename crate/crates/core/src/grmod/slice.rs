//! Degreewise slices of presented modules.
//!
//! A slice M_j is a module over the degree-0 part A_0, and its concrete model
//! depends on the base classification of the ring:
//!
//! - FIELD base: M_j is a finite k-vector space. The model spans it by
//!   standard monomials (u, t) with u reduced against the ring relations,
//!   then quotients by relation multiples with row reduction.
//! - UNIVARIATE_PID base: M_j is a finitely generated k[x]-module, presented
//!   on pairs (u, t) with u a monomial in the positive-weight variables; the
//!   canonical value is the Smith normal form of the presentation.
//! - GENERAL base: the k-vector-space model is used when every weight-0
//!   variable is nilpotent with a pure-power Groebner lead, which bounds the
//!   enumeration; otherwise the slice is rejected as unbounded. The bound is
//!   a certificate of finiteness, so rejection is conservative.

use crate::error::KernelError;
use crate::grmod::presented::{ModuleMap, PresentedModule};
use crate::grring::{BaseClass, GradedRing, ModElem, Monomial, Poly};
use crate::scalars::{CokerShape, ExactMatrix, FieldElement, Rref, UniPoly, UniPolyMatrix};
use std::collections::BTreeMap;

/// Canonical isomorphism-invariant value of a slice.
#[derive(Debug, Clone, PartialEq)]
pub enum SliceValue {
    /// k-dimension, for bases where the slice is a finite k-vector space.
    Dim(usize),
    /// k[x]-module shape: free rank and monic invariant factors.
    Shape(CokerShape),
}

impl SliceValue {
    pub fn is_zero(&self) -> bool {
        match self {
            SliceValue::Dim(d) => *d == 0,
            SliceValue::Shape(s) => s.is_zero(),
        }
    }

    /// k-dimension when finite (a shape with free summands has none).
    pub fn k_dimension(&self) -> Option<usize> {
        match self {
            SliceValue::Dim(d) => Some(*d),
            SliceValue::Shape(s) => s.k_dimension(),
        }
    }
}

/// Exponent caps for enumerating monomials of a fixed weighted degree.
/// Positive-weight variables are bounded by degree; weight-0 variables need
/// an explicit nilpotency bound or must be excluded.
fn enumerate_monomials(
    weights: &[i64],
    degree: i64,
    zero_caps: &BTreeMap<usize, u32>,
    include_zero_weight: bool,
) -> Vec<Monomial> {
    if degree < 0 {
        return Vec::new();
    }
    let nvars = weights.len();
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(
        weights: &[i64],
        zero_caps: &BTreeMap<usize, u32>,
        include_zero_weight: bool,
        v: usize,
        remaining: i64,
        current: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if v == weights.len() {
            if remaining == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let w = weights[v];
        if w == 0 {
            let cap = if include_zero_weight {
                zero_caps.get(&v).map(|c| c.saturating_sub(1)).unwrap_or(0)
            } else {
                0
            };
            for e in 0..=cap {
                current[v] = e;
                rec(weights, zero_caps, include_zero_weight, v + 1, remaining, current, out);
            }
        } else {
            let max = remaining / w;
            for e in 0..=max {
                current[v] = e as u32;
                rec(
                    weights,
                    zero_caps,
                    include_zero_weight,
                    v + 1,
                    remaining - e * w,
                    current,
                    out,
                );
            }
        }
        current[v] = 0;
    }
    rec(weights, zero_caps, include_zero_weight, 0, degree, &mut current, &mut out);
    out
}

/// Nilpotency caps for every weight-0 variable, certified by pure-power
/// leading terms in the ring's Groebner basis. `degree` is only used to
/// report the offending slice.
fn zero_weight_caps(ring: &GradedRing, degree: i64) -> Result<BTreeMap<usize, u32>, KernelError> {
    let mut caps = BTreeMap::new();
    let leads: Vec<Monomial> = ring
        .relation_gb_polys()
        .iter()
        .filter_map(|p| p.leading_term().map(|(m, _)| m.clone()))
        .collect();
    for v in ring.zero_weight_vars() {
        let mut best: Option<u32> = None;
        for m in &leads {
            let pure = m.0.iter().enumerate().all(|(w, &e)| w == v || e == 0);
            if pure && m.0[v] > 0 {
                best = Some(best.map_or(m.0[v], |b| b.min(m.0[v])));
            }
        }
        match best {
            Some(d) => {
                caps.insert(v, d);
            }
            None => return Err(KernelError::UnboundedSlice { degree }),
        }
    }
    Ok(caps)
}

fn is_standard(m: &Monomial, leads: &[Monomial]) -> bool {
    leads.iter().all(|l| !l.divides(m))
}

/// k-vector-space slice model (FIELD base, or GENERAL base with nilpotent
/// weight-0 variables).
#[derive(Debug, Clone)]
pub struct KSliceModel {
    ring: GradedRing,
    degree: i64,
    /// Standard monomials (u, t) spanning F_j mod I·F, in enumeration order.
    monomials: Vec<(Monomial, usize)>,
    index: BTreeMap<(Vec<u32>, usize), usize>,
    rel_rref: Rref,
    /// Indices of non-pivot monomials: a basis of the quotient slice.
    basis: Vec<usize>,
}

impl KSliceModel {
    pub fn build(module: &PresentedModule, degree: i64) -> Result<KSliceModel, KernelError> {
        let ring = module.ring().clone();
        let caps = match ring.base_class() {
            BaseClass::Field => BTreeMap::new(),
            BaseClass::General => zero_weight_caps(&ring, degree)?,
            BaseClass::UnivariatePid { .. } => {
                return Err(KernelError::UnsupportedBase {
                    base: "UNIVARIATE_PID".to_string(),
                    operation: "k-vector-space slice model".to_string(),
                    reason: "slices are k[x]-modules; use the PID slice model".to_string(),
                })
            }
        };
        let leads: Vec<Monomial> = ring
            .relation_gb_polys()
            .iter()
            .filter_map(|p| p.leading_term().map(|(m, _)| m.clone()))
            .collect();
        let mut monomials = Vec::new();
        for t in 0..module.gens().rank() {
            let d = degree - module.gens().degree(t);
            for u in enumerate_monomials(ring.weights(), d, &caps, true) {
                if is_standard(&u, &leads) {
                    monomials.push((u, t));
                }
            }
        }
        let index: BTreeMap<(Vec<u32>, usize), usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, (u, t))| ((u.0.clone(), *t), i))
            .collect();
        // Relation multiples: standard-monomial multiples of each relation
        // column, expanded into the spanning coordinates.
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        let field = ring.field();
        for (s, col) in module.relations().cols().iter().enumerate() {
            let delta = module.relations().source().degree(s);
            for u in enumerate_monomials(ring.weights(), degree - delta, &caps, true) {
                if !is_standard(&u, &leads) {
                    continue;
                }
                let one = field.one();
                let scaled = col.mul_term(&u, &one);
                let mut row = vec![field.zero(); monomials.len()];
                let mut nonzero = false;
                for (t, p) in scaled.comps.iter().enumerate() {
                    let nf = ring.normal_form(p);
                    for (m, c) in nf.terms() {
                        let idx = *index
                            .get(&(m.0.clone(), t))
                            .expect("normal-form term is a standard monomial of the slice degree");
                        row[idx] = row[idx].add(c);
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        let mat = ExactMatrix::from_rows(field, monomials.len(), rows);
        let rel_rref = mat.rref();
        let pivot_set: std::collections::BTreeSet<usize> =
            rel_rref.pivots.iter().copied().collect();
        let basis =
            (0..monomials.len()).filter(|i| !pivot_set.contains(i)).collect();
        Ok(KSliceModel { ring, degree, monomials, index, rel_rref, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn value(&self) -> SliceValue {
        SliceValue::Dim(self.dim())
    }

    /// Basis representatives as elements of the generator frame.
    pub fn basis_elements(&self, rank: usize) -> Vec<ModElem> {
        let one = self.ring.field().one();
        self.basis
            .iter()
            .map(|&i| {
                let (u, t) = &self.monomials[i];
                let mut e = ModElem::zero(rank);
                e.comps[*t] = Poly::term(u.clone(), one.clone());
                e
            })
            .collect()
    }

    /// Expands a homogeneous degree-j element into spanning coordinates.
    pub fn ambient_coords(&self, v: &ModElem) -> Vec<FieldElement> {
        let field = self.ring.field();
        let mut out = vec![field.zero(); self.monomials.len()];
        for (t, p) in v.comps.iter().enumerate() {
            let nf = self.ring.normal_form(p);
            for (m, c) in nf.terms() {
                let idx = *self
                    .index
                    .get(&(m.0.clone(), t))
                    .expect("element is homogeneous of the slice degree");
                out[idx] = out[idx].add(c);
            }
        }
        out
    }

    /// Coordinates in the quotient basis: ambient coordinates reduced by the
    /// relation row space, restricted to non-pivot positions.
    pub fn quotient_coords(&self, v: &ModElem) -> Vec<FieldElement> {
        let mut coords = self.ambient_coords(v);
        for (r, &p) in self.rel_rref.pivots.iter().enumerate() {
            let c = coords[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, val) in self.rel_rref.matrix.row(r) {
                coords[*j] = coords[*j].sub(&c.mul(val));
            }
        }
        self.basis.iter().map(|&i| coords[i].clone()).collect()
    }

    /// Section of the quotient: the representative supported on basis
    /// monomials with the given coordinates.
    pub fn representative(&self, coords: &[FieldElement], rank: usize) -> ModElem {
        debug_assert_eq!(coords.len(), self.basis.len());
        let order = self.ring.order();
        let mut e = ModElem::zero(rank);
        for (&i, c) in self.basis.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            let (u, t) = &self.monomials[i];
            e.comps[*t] = e.comps[*t].add(order, &Poly::term(u.clone(), c.clone()));
        }
        e
    }
}

/// k[x]-module slice model over a UNIVARIATE_PID base.
#[derive(Debug, Clone)]
pub struct PidSliceModel {
    ring: GradedRing,
    degree: i64,
    zero_var: usize,
    /// Pairs (u, t) with u a positive-weight monomial of degree j - g_t.
    pairs: Vec<(Monomial, usize)>,
    index: BTreeMap<(Vec<u32>, usize), usize>,
    /// Presentation of the slice: k[x]^pairs / column space.
    presentation: UniPolyMatrix,
}

impl PidSliceModel {
    pub fn build(module: &PresentedModule, degree: i64) -> Result<PidSliceModel, KernelError> {
        let ring = module.ring().clone();
        let zero_var = match ring.base_class() {
            BaseClass::UnivariatePid { var } => var,
            other => {
                return Err(KernelError::UnsupportedBase {
                    base: other.name().to_string(),
                    operation: "k[x]-module slice model".to_string(),
                    reason: "the base must be a univariate polynomial ring".to_string(),
                })
            }
        };
        let caps = BTreeMap::new();
        let mut pairs = Vec::new();
        for t in 0..module.gens().rank() {
            let d = degree - module.gens().degree(t);
            for u in enumerate_monomials(ring.weights(), d, &caps, false) {
                pairs.push((u, t));
            }
        }
        let index: BTreeMap<(Vec<u32>, usize), usize> =
            pairs.iter().enumerate().map(|(i, (u, t))| ((u.0.clone(), *t), i)).collect();
        let field = ring.field();
        let mut columns: Vec<Vec<UniPoly>> = Vec::new();
        // Ring relations acting on each generator frame position.
        for t in 0..module.gens().rank() {
            for g in ring.relation_gb_polys() {
                let gdeg = match g.homogeneous_degree(ring.weights()) {
                    Ok(Some(d)) => d,
                    _ => continue,
                };
                let want = degree - module.gens().degree(t) - gdeg;
                for u in enumerate_monomials(ring.weights(), want, &caps, false) {
                    let mut col = ModElem::zero(module.gens().rank());
                    col.comps[t] = g.mul_term(&u, &field.one());
                    columns.push(expand_pid(&ring, zero_var, &index, pairs.len(), &col));
                }
            }
        }
        // Module relation columns, multiplied into the slice degree.
        for (s, col) in module.relations().cols().iter().enumerate() {
            let delta = module.relations().source().degree(s);
            for u in enumerate_monomials(ring.weights(), degree - delta, &caps, false) {
                let scaled = col.mul_term(&u, &field.one());
                columns.push(expand_pid(&ring, zero_var, &index, pairs.len(), &scaled));
            }
        }
        let presentation = if columns.is_empty() {
            UniPolyMatrix::zero(field, pairs.len(), 0)
        } else {
            let mut m = UniPolyMatrix::zero(field, pairs.len(), columns.len());
            for (j, col) in columns.iter().enumerate() {
                for (i, entry) in col.iter().enumerate() {
                    if !entry.is_zero() {
                        m.set_entry(i, j, entry.clone());
                    }
                }
            }
            m
        };
        Ok(PidSliceModel { ring, degree, zero_var, pairs, index, presentation })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn npairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(Monomial, usize)] {
        &self.pairs
    }

    pub fn presentation(&self) -> &UniPolyMatrix {
        &self.presentation
    }

    pub fn shape(&self) -> CokerShape {
        self.presentation.coker_shape()
    }

    pub fn value(&self) -> SliceValue {
        SliceValue::Shape(self.shape())
    }

    /// Expands a homogeneous degree-j element into k[x]-coordinates over the
    /// pairs.
    pub fn pair_coords(&self, v: &ModElem) -> Vec<UniPoly> {
        expand_pid(&self.ring, self.zero_var, &self.index, self.pairs.len(), v)
    }

    /// Element reconstructed from k[x]-coordinates.
    pub fn from_pair_coords(&self, coords: &[UniPoly], rank: usize) -> ModElem {
        debug_assert_eq!(coords.len(), self.pairs.len());
        let order = self.ring.order();
        let mut e = ModElem::zero(rank);
        for (c, (u, t)) in coords.iter().zip(&self.pairs) {
            for (a, coeff) in c.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut m = u.clone();
                m.0[self.zero_var] += a as u32;
                e.comps[*t] = e.comps[*t].add(order, &Poly::term(m, coeff.clone()));
            }
        }
        e
    }

    /// True when the element is zero in the slice, i.e. its coordinate
    /// vector lies in the presentation's column space.
    pub fn element_is_zero(&self, v: &ModElem) -> bool {
        let coords = self.pair_coords(v);
        if coords.iter().all(UniPoly::is_zero) {
            return true;
        }
        if self.presentation.ncols() == 0 {
            return false;
        }
        self.presentation.solve(&coords).is_some()
    }

    /// Minimal k[x]-generators of the slice: torsion generators first (with
    /// their annihilating invariant factors), then free generators.
    pub fn generators(&self, rank: usize) -> Vec<(ModElem, UniPoly)> {
        crate::scalars::minimal_cover(&self.presentation)
            .into_iter()
            .map(|(coords, order)| (self.from_pair_coords(&coords, rank), order))
            .collect()
    }
}

fn expand_pid(
    ring: &GradedRing,
    zero_var: usize,
    index: &BTreeMap<(Vec<u32>, usize), usize>,
    npairs: usize,
    v: &ModElem,
) -> Vec<UniPoly> {
    let field = ring.field();
    let mut out = vec![UniPoly::zero(field); npairs];
    for (t, p) in v.comps.iter().enumerate() {
        for (m, c) in p.terms() {
            let a = m.0[zero_var] as usize;
            let mut u = m.clone();
            u.0[zero_var] = 0;
            let idx = *index
                .get(&(u.0, t))
                .expect("element is homogeneous of the slice degree");
            let add = UniPoly::monomial(field, c.clone(), a);
            out[idx] = out[idx].add(&add);
        }
    }
    out
}

/// Canonical slice value dispatched on the base class.
pub fn slice_value(module: &PresentedModule, degree: i64) -> Result<SliceValue, KernelError> {
    match module.ring().base_class() {
        BaseClass::UnivariatePid { .. } => {
            Ok(PidSliceModel::build(module, degree)?.value())
        }
        _ => Ok(KSliceModel::build(module, degree)?.value()),
    }
}

/// k-dimension of a slice when finite. Over a PID base this is `None`
/// whenever the slice has a free summand.
pub fn slice_k_dimension(
    module: &PresentedModule,
    degree: i64,
) -> Result<Option<usize>, KernelError> {
    Ok(slice_value(module, degree)?.k_dimension())
}

/// Generators of the slice as an A_0-module, as elements of the generator
/// frame. Over a FIELD or bounded GENERAL base this is a k-basis; over a PID
/// base it is a minimal cover from the Smith normal form.
pub fn slice_generators(
    module: &PresentedModule,
    degree: i64,
) -> Result<Vec<ModElem>, KernelError> {
    let rank = module.gens().rank();
    match module.ring().base_class() {
        BaseClass::UnivariatePid { .. } => Ok(PidSliceModel::build(module, degree)?
            .generators(rank)
            .into_iter()
            .map(|(e, _)| e)
            .collect()),
        _ => Ok(KSliceModel::build(module, degree)?.basis_elements(rank)),
    }
}

/// Matrix of a module map on a degree-j slice in quotient-basis coordinates;
/// k-vector-space bases only.
pub fn k_slice_matrix(f: &ModuleMap, degree: i64) -> Result<ExactMatrix, KernelError> {
    let src = KSliceModel::build(f.source(), degree)?;
    let tgt = KSliceModel::build(f.target(), degree)?;
    let field = f.ring().field();
    let src_rank = f.source().gens().rank();
    let mut rows: Vec<Vec<FieldElement>> = vec![vec![field.zero(); src.dim()]; tgt.dim()];
    for (j, b) in src.basis_elements(src_rank).iter().enumerate() {
        let image = f.map().apply(b);
        let coords = tgt.quotient_coords(&image);
        for (i, c) in coords.into_iter().enumerate() {
            rows[i][j] = c;
        }
    }
    Ok(ExactMatrix::from_rows(field, src.dim(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmod::free::{FreeModule, GradedMap};
    use crate::grring::{make_ring, MonomialOrder, PolyParser};
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

    #[test]
    fn polynomial_ring_slices_have_binomial_dimensions() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let a = PresentedModule::ring_module(&r);
        for (j, d) in [(0i64, 1usize), (1, 2), (2, 3), (3, 4), (-1, 0)] {
            assert_eq!(slice_k_dimension(&a, j).unwrap(), Some(d), "degree {j}");
        }
    }

    #[test]
    fn hypersurface_quotient_slice_dimensions() {
        // A = k[x,y]/(x^2 + y^2): dimensions 1, 2, 2, 2, ...
        let r = ring(&[("x", 1), ("y", 1)], &["x^2 + y^2"]);
        let a = PresentedModule::ring_module(&r);
        for (j, d) in [(0i64, 1usize), (1, 2), (2, 2), (3, 2), (4, 2)] {
            assert_eq!(slice_k_dimension(&a, j).unwrap(), Some(d), "degree {j}");
        }
    }

    #[test]
    fn module_relations_cut_the_slice() {
        // M = coker(x: A(-1) -> A) = A/(x) over k[x,y]: every slice is 1-dim.
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let gens = FreeModule::new(r.clone(), vec![0]);
        let src = FreeModule::new(r.clone(), vec![1]);
        let rel = GradedMap::new(src, gens.clone(), vec![ModElem::from_comps(vec![pp(&r, "x")])])
            .unwrap();
        let m = PresentedModule::new(gens, rel);
        for j in 0..4 {
            assert_eq!(slice_k_dimension(&m, j).unwrap(), Some(1));
        }
    }

    #[test]
    fn twist_slice_conformance() {
        // slice(M(e), i) = slice(M, e + i) for e in [-3, 3]: the convention
        // lock for the twist.
        let r = ring(&[("x", 1), ("y", 1)], &["x^2 + y^2"]);
        let m = PresentedModule::ring_module(&r);
        for e in -3i64..=3 {
            let t = m.twist(e);
            for i in -1i64..=4 {
                assert_eq!(
                    slice_value(&t, i).unwrap(),
                    slice_value(&m, e + i).unwrap(),
                    "twist {e} slice {i}"
                );
            }
        }
    }

    #[test]
    fn artinian_zero_weight_slices_are_finite() {
        // R = k[z]/(z^2) with |z| = 0 is a GENERAL base; the degree-0 slice
        // of R is spanned by {1, z}.
        let r = ring(&[("z", 0)], &["z^2"]);
        let m = PresentedModule::ring_module(&r);
        assert_eq!(slice_k_dimension(&m, 0).unwrap(), Some(2));
        assert_eq!(slice_k_dimension(&m, 1).unwrap(), Some(0));
    }

    #[test]
    fn unbounded_general_slice_is_rejected() {
        let r = ring(&[("z", 0), ("w", 0)], &[]);
        let m = PresentedModule::ring_module(&r);
        match slice_value(&m, 0).unwrap_err() {
            KernelError::UnboundedSlice { degree: 0 } => {}
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn pid_slices_report_shapes() {
        // A = k[x][T] with |x| = 0, |T| = 1: slice 1 is free of rank 1.
        let r = ring(&[("x", 0), ("T", 1)], &[]);
        let a = PresentedModule::ring_module(&r);
        match slice_value(&a, 1).unwrap() {
            SliceValue::Shape(s) => {
                assert_eq!(s.free_rank, 1);
                assert!(s.torsion.is_empty());
            }
            v => panic!("unexpected value {v:?}"),
        }

        // A = k[x][T]/(x^2 T): slice 1 is k[x]/(x^2), slice 0 is free.
        let r = ring(&[("x", 0), ("T", 1)], &["x^2*T"]);
        let a = PresentedModule::ring_module(&r);
        let v1 = slice_value(&a, 1).unwrap();
        assert_eq!(v1.k_dimension(), Some(2));
        let v0 = slice_value(&a, 0).unwrap();
        assert_eq!(v0.k_dimension(), None);
        match v0 {
            SliceValue::Shape(s) => assert_eq!(s.free_rank, 1),
            v => panic!("unexpected value {v:?}"),
        }
        // One torsion generator T with order x^2.
        let model = PidSliceModel::build(&a, 1).unwrap();
        let gens = model.generators(1);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].1.degree(), Some(2));
        assert!(model.element_is_zero(&ModElem::from_comps(vec![pp(&r, "x^2*T")])));
        assert!(!model.element_is_zero(&ModElem::from_comps(vec![pp(&r, "x*T")])));
    }

    #[test]
    fn quotient_coords_round_trip() {
        let r = ring(&[("x", 1), ("y", 1)], &["x^2 + y^2"]);
        let m = PresentedModule::ring_module(&r);
        let model = KSliceModel::build(&m, 2).unwrap();
        assert_eq!(model.dim(), 2);
        // x^2 = -y^2 in the quotient: coordinates must witness that.
        let a = ModElem::from_comps(vec![pp(&r, "x^2")]);
        let b = ModElem::from_comps(vec![pp(&r, "-y^2")]);
        assert_eq!(model.quotient_coords(&a), model.quotient_coords(&b));
        let rep = model.representative(&model.quotient_coords(&a), 1);
        assert_eq!(model.quotient_coords(&rep), model.quotient_coords(&a));
    }

    #[test]
    fn slice_matrix_of_multiplication_map() {
        // Multiplication by x on A = k[x,y] in degree 1 -> need a map
        // A(-1) -> A; on slice degree 2 its image is x*A_1, rank 2.
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let src = PresentedModule::free(FreeModule::new(r.clone(), vec![1]));
        let tgt = PresentedModule::ring_module(&r);
        let map = GradedMap::new(
            src.gens().clone(),
            tgt.gens().clone(),
            vec![ModElem::from_comps(vec![pp(&r, "x")])],
        )
        .unwrap();
        let f = ModuleMap::new(src, tgt, map).unwrap();
        let m = k_slice_matrix(&f, 2).unwrap();
        // Source slice: degree-1 monomials times the generator (2 of them);
        // target slice: degree-2 monomials (3). The map is injective.
        assert_eq!(m.nrows(), 3);
        assert_eq!(m.ncols(), 2);
        assert_eq!(m.rank(), 2);
    }
}
