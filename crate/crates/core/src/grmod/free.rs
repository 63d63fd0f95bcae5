//! Graded free modules and degree-checked homogeneous maps between them.
//!
//! A free module is a list of generator degrees over a fixed ring; generator
//! t of degree g spans a summand A(-g). A map is stored column-major: column
//! s is the image of source generator s as a vector over the target
//! generators, every entry in normal form modulo the ring relations. The
//! entry in row t of column s must be homogeneous of degree
//! `source.degree(s) - target.degree(t)`; constructors reject anything else,
//! so a constructed map is homogeneous of degree zero by definition.

use crate::error::KernelError;
use crate::grring::{GradedRing, ModElem, Poly};

#[derive(Debug, Clone)]
pub struct FreeModule {
    ring: GradedRing,
    degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: GradedRing, degrees: Vec<i64>) -> Self {
        FreeModule { ring, degrees }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, t: usize) -> i64 {
        self.degrees[t]
    }

    /// Twist by e: the same module with all degrees shifted down, so that
    /// `twist(e)` of A is A(e) with its generator in degree -e.
    pub fn twist(&self, e: i64) -> FreeModule {
        FreeModule {
            ring: self.ring.clone(),
            degrees: self.degrees.iter().map(|g| g - e).collect(),
        }
    }

    /// Dual generator degrees: Hom(A(-g), A) = A(g).
    pub fn dual(&self) -> FreeModule {
        FreeModule { ring: self.ring.clone(), degrees: self.degrees.iter().map(|g| -g).collect() }
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        debug_assert!(self.ring.same_ring(&other.ring));
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        FreeModule { ring: self.ring.clone(), degrees }
    }

    pub fn same_module(&self, other: &FreeModule) -> bool {
        self.ring.same_ring(&other.ring) && self.degrees == other.degrees
    }
}

/// Homogeneous degree-0 map of graded free modules, column-major.
#[derive(Debug, Clone)]
pub struct GradedMap {
    source: FreeModule,
    target: FreeModule,
    cols: Vec<ModElem>,
}

impl GradedMap {
    /// Checks shape and per-entry homogeneity; entries are reduced to normal
    /// form modulo the ring relations.
    pub fn new(
        source: FreeModule,
        target: FreeModule,
        cols: Vec<ModElem>,
    ) -> Result<GradedMap, KernelError> {
        let ring = source.ring().clone();
        debug_assert!(ring.same_ring(target.ring()));
        if cols.len() != source.rank() {
            return Err(KernelError::DimensionMismatch {
                context: format!(
                    "map has {} columns but the source has rank {}",
                    cols.len(),
                    source.rank()
                ),
            });
        }
        let mut reduced = Vec::with_capacity(cols.len());
        for (s, col) in cols.into_iter().enumerate() {
            if col.rank() != target.rank() {
                return Err(KernelError::DimensionMismatch {
                    context: format!(
                        "column {s} has {} rows but the target has rank {}",
                        col.rank(),
                        target.rank()
                    ),
                });
            }
            let comps: Vec<Poly> = col.comps.iter().map(|p| ring.normal_form(p)).collect();
            for (t, p) in comps.iter().enumerate() {
                let expected = source.degree(s) - target.degree(t);
                match p.homogeneous_degree(ring.weights()) {
                    Ok(None) => {}
                    Ok(Some(d)) if d == expected => {}
                    Ok(Some(d)) => {
                        return Err(KernelError::EntryDegreeMismatch {
                            row: t,
                            col: s,
                            expected,
                            detail: format!("entry is homogeneous of degree {d}"),
                        });
                    }
                    Err(detail) => {
                        return Err(KernelError::EntryDegreeMismatch {
                            row: t,
                            col: s,
                            expected,
                            detail: format!("entry is not homogeneous: {detail}"),
                        });
                    }
                }
            }
            reduced.push(ModElem::from_comps(comps));
        }
        Ok(GradedMap { source, target, cols: reduced })
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> GradedMap {
        let rank = target.rank();
        let cols = vec![ModElem::zero(rank); source.rank()];
        GradedMap { source, target, cols }
    }

    pub fn identity(module: &FreeModule) -> GradedMap {
        let ring = module.ring();
        let one = ring.field().one();
        let nvars = ring.nvars();
        let cols = (0..module.rank())
            .map(|s| {
                let mut col = ModElem::zero(module.rank());
                col.comps[s] = Poly::term(crate::grring::Monomial::one(nvars), one.clone());
                col
            })
            .collect();
        GradedMap { source: module.clone(), target: module.clone(), cols }
    }

    pub fn ring(&self) -> &GradedRing {
        self.source.ring()
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn cols(&self) -> &[ModElem] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.cols[col].comps[row]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(ModElem::is_zero)
    }

    /// Image of a source vector, reduced to normal form.
    pub fn apply(&self, v: &ModElem) -> ModElem {
        let ring = self.ring();
        let order = ring.order();
        let mut out = ModElem::zero(self.target.rank());
        for (s, coeff) in v.comps.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (m, c) in coeff.terms() {
                out = out.add(order, &self.cols[s].mul_term(m, c));
            }
        }
        ModElem::from_comps(out.comps.iter().map(|p| ring.normal_form(p)).collect())
    }

    /// Composition self ∘ other (other feeds into self).
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        debug_assert!(other.target.same_module(&self.source));
        let cols = other.cols.iter().map(|col| self.apply(col)).collect();
        GradedMap { source: other.source.clone(), target: self.target.clone(), cols }
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        debug_assert!(self.source.same_module(&other.source));
        debug_assert!(self.target.same_module(&other.target));
        let order = self.ring().order();
        let cols =
            self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(order, b)).collect();
        GradedMap { source: self.source.clone(), target: self.target.clone(), cols }
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols.iter().map(ModElem::neg).collect(),
        }
    }

    pub fn scale(&self, c: &crate::scalars::FieldElement) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols.iter().map(|col| col.scale(c)).collect(),
        }
    }

    /// Twist both sides by e; the matrix is unchanged.
    pub fn twist(&self, e: i64) -> GradedMap {
        GradedMap {
            source: self.source.twist(e),
            target: self.target.twist(e),
            cols: self.cols.clone(),
        }
    }

    /// Contravariant dual: the transpose matrix between dual free modules.
    pub fn dual(&self) -> GradedMap {
        let src = self.target.dual();
        let tgt = self.source.dual();
        let cols = (0..src.rank())
            .map(|t| {
                ModElem::from_comps(
                    (0..tgt.rank()).map(|s| self.cols[s].comps[t].clone()).collect(),
                )
            })
            .collect();
        GradedMap { source: src, target: tgt, cols }
    }

    /// Block-diagonal sum of two maps.
    pub fn direct_sum(&self, other: &GradedMap) -> GradedMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let mut cols = Vec::with_capacity(source.rank());
        for col in &self.cols {
            let mut comps = col.comps.clone();
            comps.extend(vec![Poly::zero(); other.target.rank()]);
            cols.push(ModElem::from_comps(comps));
        }
        for col in &other.cols {
            let mut comps = vec![Poly::zero(); self.target.rank()];
            comps.extend(col.comps.clone());
            cols.push(ModElem::from_comps(comps));
        }
        GradedMap { source, target, cols }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grring::{make_ring, PolyParser};
    use crate::scalars::Field;

    fn ring_xy() -> GradedRing {
        make_ring(
            Field::Rational,
            vec![("x".to_string(), 1), ("y".to_string(), 1)],
            vec![],
        )
        .unwrap()
    }

    fn pp(ring: &GradedRing, s: &str) -> Poly {
        PolyParser::for_ring(ring).parse(s, 1, 1).unwrap()
    }

    #[test]
    fn entry_degrees_are_enforced() {
        let r = ring_xy();
        let src = FreeModule::new(r.clone(), vec![2]);
        let tgt = FreeModule::new(r.clone(), vec![0]);
        // Degree 2 entry required: x^2 passes, x fails.
        let good = GradedMap::new(
            src.clone(),
            tgt.clone(),
            vec![ModElem::from_comps(vec![pp(&r, "x^2")])],
        );
        assert!(good.is_ok());
        let bad = GradedMap::new(src, tgt, vec![ModElem::from_comps(vec![pp(&r, "x")])]);
        match bad.unwrap_err() {
            KernelError::EntryDegreeMismatch { row: 0, col: 0, expected: 2, .. } => {}
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn twist_shifts_degrees_against_the_twist() {
        let r = ring_xy();
        let f = FreeModule::new(r, vec![0, 3]);
        assert_eq!(f.twist(1).degrees(), &[-1, 2]);
        assert_eq!(f.twist(-2).degrees(), &[2, 5]);
    }

    #[test]
    fn compose_and_apply_agree() {
        let r = ring_xy();
        let a = FreeModule::new(r.clone(), vec![2]);
        let b = FreeModule::new(r.clone(), vec![1, 1]);
        let c = FreeModule::new(r.clone(), vec![0]);
        // f: A(-2) -> A(-1)^2, g: A(-1)^2 -> A.
        let f = GradedMap::new(
            a.clone(),
            b.clone(),
            vec![ModElem::from_comps(vec![pp(&r, "x"), pp(&r, "y")])],
        )
        .unwrap();
        let g = GradedMap::new(
            b,
            c,
            vec![
                ModElem::from_comps(vec![pp(&r, "y")]),
                ModElem::from_comps(vec![pp(&r, "x")]),
            ],
        )
        .unwrap();
        let gf = g.compose(&f);
        assert_eq!(gf.entry(0, 0), &pp(&r, "2*x*y"));
        let v = ModElem::from_comps(vec![pp(&r, "x")]);
        assert_eq!(gf.apply(&v).comps[0], pp(&r, "2*x^2*y"));
    }

    #[test]
    fn dual_is_an_involution() {
        let r = ring_xy();
        let src = FreeModule::new(r.clone(), vec![1, 2]);
        let tgt = FreeModule::new(r.clone(), vec![0]);
        let f = GradedMap::new(
            src,
            tgt,
            vec![
                ModElem::from_comps(vec![pp(&r, "x")]),
                ModElem::from_comps(vec![pp(&r, "x*y")]),
            ],
        )
        .unwrap();
        let dd = f.dual().dual();
        assert!(dd.source().same_module(f.source()));
        assert!(dd.target().same_module(f.target()));
        assert_eq!(dd.cols(), f.cols());
        assert_eq!(f.dual().source().degrees(), &[0]);
        assert_eq!(f.dual().target().degrees(), &[-1, -2]);
    }

    #[test]
    fn composition_with_identity_is_identity() {
        let r = ring_xy();
        let m = FreeModule::new(r.clone(), vec![0, 1]);
        let id = GradedMap::identity(&m);
        let f = GradedMap::new(
            FreeModule::new(r.clone(), vec![2]),
            m,
            vec![ModElem::from_comps(vec![pp(&r, "x^2"), pp(&r, "y")])],
        )
        .unwrap();
        let composed = id.compose(&f);
        assert_eq!(composed.cols(), f.cols());
    }
}
