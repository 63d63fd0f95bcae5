//! Cochain complexes of graded free modules.
//!
//! A [`FreeComplex`] stores terms over a window `[lo, hi]` of cohomological
//! indices, with differentials raising the index by one. Outside the window
//! the complex is genuinely zero unless a [`BandCertificate`] is attached.
//! The certificate states that the stored window is the visible part of a
//! complex continuing below `lo`, that the continuation is exact at every
//! index strictly below `lo`, and that every omitted component has all
//! generator degrees at or above a stated bound. Consumers must consult the
//! certificate instead of trusting the window: cohomology below `lo` is zero
//! exactly when certified, and the edge index `lo` of a banded complex is
//! unanswerable because its incoming differential is omitted.

use std::collections::BTreeMap;

use crate::error::KernelError;
use crate::grmod::{kernel_of_module_map, FreeModule, GradedMap, ModuleMap, PresentedModule};
use crate::grring::{BaseClass, GradedRing, ModElem, Poly};

/// Certificate for the omitted tail below a complex's stored window: the
/// tail is exact at every index < lo and all its generator degrees are
/// >= `min_gen_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandCertificate {
    pub min_gen_degree: i64,
}

#[derive(Debug, Clone)]
pub struct FreeComplex {
    ring: GradedRing,
    lo: i64,
    terms: Vec<FreeModule>,
    diffs: Vec<GradedMap>,
    band: Option<BandCertificate>,
}

impl FreeComplex {
    /// `terms[k]` sits at cohomological index `lo + k`; `diffs[k]` maps
    /// `terms[k]` to `terms[k+1]`. The composite of consecutive
    /// differentials must vanish identically.
    pub fn new(
        ring: GradedRing,
        lo: i64,
        terms: Vec<FreeModule>,
        diffs: Vec<GradedMap>,
        band: Option<BandCertificate>,
    ) -> Result<FreeComplex, KernelError> {
        if terms.is_empty() {
            return Ok(FreeComplex {
                ring: ring.clone(),
                lo,
                terms: vec![FreeModule::new(ring, Vec::new())],
                diffs: Vec::new(),
                band,
            });
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
            if !d.source().same_module(&terms[k]) || !d.target().same_module(&terms[k + 1]) {
                return Err(KernelError::DimensionMismatch {
                    context: format!(
                        "differential at index {} does not match its terms",
                        lo + k as i64
                    ),
                });
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k + 1].compose(&diffs[k]).is_zero() {
                return Err(KernelError::NotAComplex { index: lo + k as i64 });
            }
        }
        Ok(FreeComplex { ring, lo, terms, diffs, band })
    }

    pub fn zero(ring: GradedRing) -> FreeComplex {
        FreeComplex {
            ring: ring.clone(),
            lo: 0,
            terms: vec![FreeModule::new(ring, Vec::new())],
            diffs: Vec::new(),
            band: None,
        }
    }

    /// A single free module placed at one cohomological index.
    pub fn concentrated(module: FreeModule, index: i64) -> FreeComplex {
        FreeComplex {
            ring: module.ring().clone(),
            lo: index,
            terms: vec![module],
            diffs: Vec::new(),
            band: None,
        }
    }

    pub fn with_band(mut self, band: BandCertificate) -> FreeComplex {
        self.band = Some(band);
        self
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

    pub fn band(&self) -> Option<BandCertificate> {
        self.band
    }

    /// The term at index j; rank zero outside the stored window.
    pub fn term(&self, j: i64) -> FreeModule {
        if j < self.lo || j > self.hi() {
            FreeModule::new(self.ring.clone(), Vec::new())
        } else {
            self.terms[(j - self.lo) as usize].clone()
        }
    }

    /// The differential leaving index j; the zero map outside the window.
    pub fn diff(&self, j: i64) -> GradedMap {
        let k = j - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            GradedMap::zero(self.term(j), self.term(j + 1))
        }
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(FreeModule::rank).sum()
    }

    /// shift(X, n)^j = X^{j+n}, with the differentials scaled by (-1)^n.
    pub fn shift(&self, n: i64) -> FreeComplex {
        let flip = n.rem_euclid(2) == 1;
        let diffs = self
            .diffs
            .iter()
            .map(|d| if flip { d.neg() } else { d.clone() })
            .collect();
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo - n,
            terms: self.terms.clone(),
            diffs,
            band: self.band,
        }
    }

    /// Twist every term by e; the matrices are unchanged.
    pub fn twist(&self, e: i64) -> FreeComplex {
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.twist(e)).collect(),
            diffs: self.diffs.iter().map(|d| d.twist(e)).collect(),
            band: self.band.map(|b| BandCertificate { min_gen_degree: b.min_gen_degree - e }),
        }
    }

    /// D(X)^j = (X^{-j})^dual with transposed differentials. Applying it
    /// twice returns the original complex, matrices included. A banded
    /// complex cannot be dualized: its omitted tail would sit above the
    /// window, which this representation cannot express.
    pub fn dualize(&self) -> Result<FreeComplex, KernelError> {
        if self.band.is_some() {
            return Err(KernelError::Unsupported {
                context: "dualize of a complex with an omitted tail".into(),
            });
        }
        let n = self.terms.len();
        let terms: Vec<FreeModule> =
            (0..n).map(|k| self.terms[n - 1 - k].dual()).collect();
        let diffs: Vec<GradedMap> =
            (0..self.diffs.len()).map(|k| self.diffs[self.diffs.len() - 1 - k].dual()).collect();
        Ok(FreeComplex { ring: self.ring.clone(), lo: -self.hi(), terms, diffs, band: None })
    }

    /// ker d^j / im d^{j-1} as a presented module. Above the window the
    /// answer is zero; below it the band certificate decides: certified
    /// indices report zero, and the banded edge `lo` is unanswerable
    /// because the incoming differential is omitted.
    pub fn cohomology(&self, j: i64) -> Result<PresentedModule, KernelError> {
        let zero = PresentedModule::free(FreeModule::new(self.ring.clone(), Vec::new()));
        if j > self.hi() {
            return Ok(zero);
        }
        if j < self.lo {
            // Either the complex is genuinely zero there, or the band
            // certificate asserts exactness strictly below lo.
            return Ok(zero);
        }
        if self.band.is_some() && j == self.lo {
            return Err(KernelError::WindowExceeded { index: j, lo: self.lo, hi: self.hi() });
        }
        let source = PresentedModule::new(self.term(j), self.diff(j - 1));
        let target = PresentedModule::free(self.term(j + 1));
        let f = ModuleMap::new_unchecked(source, target, self.diff(j));
        let (h, _) = kernel_of_module_map(&f)?;
        Ok(h)
    }

    /// Strip unit entries from the differentials by Gaussian elimination on
    /// the complex; the result is homotopy equivalent with no degree-0
    /// entries left. Requires a field base, where every homogeneous
    /// degree-0 ring element is a scalar.
    pub fn minimize(&self) -> Result<FreeComplex, KernelError> {
        match self.ring.base_class() {
            BaseClass::Field => {}
            other => {
                return Err(KernelError::UnsupportedBase {
                    base: other.name().into(),
                    operation: "minimize".into(),
                    reason: "unit stripping needs the degree-0 part to be the coefficient field"
                        .into(),
                })
            }
        }
        let mut degrees: Vec<Vec<i64>> =
            self.terms.iter().map(|t| t.degrees().to_vec()).collect();
        // entries[k][t][s]: row t, column s of the differential leaving
        // index lo + k.
        let mut entries: Vec<Vec<Vec<Poly>>> = self
            .diffs
            .iter()
            .map(|d| {
                (0..d.target().rank())
                    .map(|t| (0..d.source().rank()).map(|s| d.entry(t, s).clone()).collect())
                    .collect()
            })
            .collect();
        let order = self.ring.order().clone();
        loop {
            let mut pivot = None;
            'scan: for (k, m) in entries.iter().enumerate() {
                for (t, row) in m.iter().enumerate() {
                    for (s, p) in row.iter().enumerate() {
                        if p.is_zero() {
                            continue;
                        }
                        if degrees[k][s] == degrees[k + 1][t] {
                            pivot = Some((k, t, s));
                            break 'scan;
                        }
                    }
                }
            }
            let Some((k, t, s)) = pivot else { break };
            let unit = entries[k][t][s]
                .terms()
                .first()
                .map(|(_, c)| c.clone())
                .expect("pivot entry is nonzero");
            let inv = unit.inv();
            let nrows = entries[k].len();
            let ncols = entries[k][0].len();
            let col_s: Vec<Poly> = (0..nrows).map(|r| entries[k][r][s].clone()).collect();
            let row_t: Vec<Poly> = entries[k][t].clone();
            let mut new_block: Vec<Vec<Poly>> = Vec::with_capacity(nrows - 1);
            for r in 0..nrows {
                if r == t {
                    continue;
                }
                let mut new_row = Vec::with_capacity(ncols - 1);
                for c in 0..ncols {
                    if c == s {
                        continue;
                    }
                    let correction = col_s[r].mul(&order, &row_t[c]).scale(&inv);
                    let val = entries[k][r][c].sub(&order, &correction);
                    new_row.push(self.ring.normal_form(&val));
                }
                new_block.push(new_row);
            }
            entries[k] = new_block;
            // The incoming differential loses the row of the deleted source
            // generator; the outgoing one loses the column of the deleted
            // target generator.
            if k > 0 {
                entries[k - 1].remove(s);
            }
            if k + 1 < entries.len() {
                for row in entries[k + 1].iter_mut() {
                    row.remove(t);
                }
            }
            degrees[k].remove(s);
            degrees[k + 1].remove(t);
        }
        let terms: Vec<FreeModule> = degrees
            .iter()
            .map(|d| FreeModule::new(self.ring.clone(), d.clone()))
            .collect();
        let mut diffs = Vec::with_capacity(entries.len());
        for (k, m) in entries.iter().enumerate() {
            let cols: Vec<ModElem> = (0..terms[k].rank())
                .map(|s| {
                    ModElem::from_comps((0..terms[k + 1].rank()).map(|t| m[t][s].clone()).collect())
                })
                .collect();
            diffs.push(GradedMap::new(terms[k].clone(), terms[k + 1].clone(), cols)?);
        }
        FreeComplex::new(self.ring.clone(), self.lo, terms, diffs, self.band)
    }
}

/// Degreewise map of free complexes commuting with the differentials.
/// Squares are checked over the union of the stored windows; squares that
/// involve omitted banded tails are the caller's certificate-level
/// responsibility.
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    lo: i64,
    maps: Vec<GradedMap>,
}

impl ChainMap {
    pub fn new(
        source: FreeComplex,
        target: FreeComplex,
        given: BTreeMap<i64, GradedMap>,
    ) -> Result<ChainMap, KernelError> {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        for (j, m) in &given {
            if *j < lo || *j > hi {
                if !m.is_zero() {
                    return Err(KernelError::DimensionMismatch {
                        context: format!("chain map component at {j} is outside both windows"),
                    });
                }
                continue;
            }
            if !m.source().same_module(&source.term(*j)) || !m.target().same_module(&target.term(*j))
            {
                return Err(KernelError::DimensionMismatch {
                    context: format!("chain map component at {j} does not match the terms"),
                });
            }
        }
        let maps: Vec<GradedMap> = (lo..=hi)
            .map(|j| {
                given
                    .get(&j)
                    .cloned()
                    .unwrap_or_else(|| GradedMap::zero(source.term(j), target.term(j)))
            })
            .collect();
        let cm = ChainMap { source, target, lo, maps };
        for j in lo..=hi {
            let left = cm.target.diff(j).compose(&cm.component(j));
            let right = cm.component(j + 1).compose(&cm.source.diff(j));
            if !left.sub(&right).is_zero() {
                return Err(KernelError::NotChainMap { index: j });
            }
        }
        Ok(cm)
    }

    pub fn identity(x: &FreeComplex) -> ChainMap {
        let maps = (x.lo()..=x.hi()).map(|j| GradedMap::identity(&x.term(j))).collect();
        ChainMap { source: x.clone(), target: x.clone(), lo: x.lo(), maps }
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> ChainMap {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let maps =
            (lo..=hi).map(|j| GradedMap::zero(source.term(j), target.term(j))).collect();
        ChainMap { source: source.clone(), target: target.clone(), lo, maps }
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn component(&self, j: i64) -> GradedMap {
        let k = j - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            GradedMap::zero(self.source.term(j), self.target.term(j))
        }
    }
}

/// Mapping cone: cone(f)^n = X^{n+1} (+) Y^n with differential
/// [[-d_X, 0], [f, d_Y]].
pub fn cone(f: &ChainMap) -> Result<FreeComplex, KernelError> {
    Ok(cone_triangle(f)?.0)
}

/// The cone together with the triangle maps Y -> cone and cone -> X[1].
pub fn cone_triangle(f: &ChainMap) -> Result<(FreeComplex, ChainMap, ChainMap), KernelError> {
    let x = f.source();
    let y = f.target();
    let ring = x.ring().clone();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    let band = match (x.band(), y.band()) {
        (None, None) => None,
        // The omitted tail of the cone is exactly the target's tail when
        // the shifted source sits entirely at or above the target's window.
        (None, Some(cy)) if x.lo() > y.lo() => Some(cy),
        // Symmetrically, the tail is the shifted source's when the bounded
        // target cannot reach below it.
        (Some(cx), None) if y.lo() >= x.lo() => Some(cx),
        _ => None,
    };
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
        let x_rank = x.term(n + 1).rank();
        let x_rank_next = x.term(n + 2).rank();
        let mut cols = Vec::with_capacity(src.rank());
        for s in 0..x_rank {
            let mut comps = dx.cols()[s].neg().comps;
            comps.extend(fc.cols()[s].comps.clone());
            cols.push(ModElem::from_comps(comps));
        }
        for s in 0..y.term(n).rank() {
            let mut comps = vec![Poly::zero(); x_rank_next];
            comps.extend(dy.cols()[s].comps.clone());
            cols.push(ModElem::from_comps(comps));
        }
        diffs.push(GradedMap::new(src.clone(), tgt.clone(), cols)?);
    }
    let c = FreeComplex::new(ring.clone(), lo, terms, diffs, band)?;
    // Y -> cone: inclusion of the second block.
    let mut incl_maps = BTreeMap::new();
    for j in y.lo()..=y.hi() {
        let tgt = c.term(j);
        let x_rank = x.term(j + 1).rank();
        let cols: Vec<ModElem> = (0..y.term(j).rank())
            .map(|s| {
                let mut comps = vec![Poly::zero(); tgt.rank()];
                comps[x_rank + s] = one_poly(&ring);
                ModElem::from_comps(comps)
            })
            .collect();
        incl_maps.insert(j, GradedMap::new(y.term(j), tgt, cols)?);
    }
    let incl = ChainMap::new(y.clone(), c.clone(), incl_maps)?;
    // cone -> X[1]: projection onto the first block.
    let x1 = x.shift(1);
    let mut proj_maps = BTreeMap::new();
    for j in c.lo()..=c.hi() {
        let src = c.term(j);
        let x_rank = x.term(j + 1).rank();
        let cols: Vec<ModElem> = (0..src.rank())
            .map(|s| {
                let mut comps = vec![Poly::zero(); x_rank];
                if s < x_rank {
                    comps[s] = one_poly(&ring);
                }
                ModElem::from_comps(comps)
            })
            .collect();
        proj_maps.insert(j, GradedMap::new(src, x1.term(j), cols)?);
    }
    let proj = ChainMap::new(c.clone(), x1, proj_maps)?;
    Ok((c, incl, proj))
}

fn one_poly(ring: &GradedRing) -> Poly {
    Poly::term(crate::grring::Monomial::one(ring.nvars()), ring.field().one())
}

/// The generator-degree splitting of a complex of frees at threshold i:
/// the subcomplex on generators of degree < i, the quotient complex on
/// generators of degree >= i, and the connecting map.
#[derive(Debug, Clone)]
pub struct SplitProjectives {
    pub prec: FreeComplex,
    pub succ: FreeComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
    /// succ -> prec[1], the mixed differential block; completes the
    /// degreewise split triangle.
    pub connecting: ChainMap,
}

/// Split P by generator degree at i. The block of the differential from
/// degree-< i generators to degree->= i generators must vanish (entries
/// would need negative degree); it is checked literally. A banded complex
/// needs its certificate bound to be >= i so the subcomplex is genuinely
/// bounded.
pub fn split_projectives(p: &FreeComplex, i: i64) -> Result<SplitProjectives, KernelError> {
    match p.band() {
        None => {}
        Some(c) if c.min_gen_degree >= i => {}
        Some(_) => {
            return Err(KernelError::MissingBandCertificate {
                operation: format!("split_projectives at threshold {i}"),
            })
        }
    }
    let ring = p.ring().clone();
    // Generator partitions per index.
    let mut prec_idx: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    let mut succ_idx: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for j in p.lo()..=p.hi() {
        let t = p.term(j);
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (g, &d) in t.degrees().iter().enumerate() {
            if d < i {
                a.push(g);
            } else {
                b.push(g);
            }
        }
        prec_idx.insert(j, a);
        succ_idx.insert(j, b);
    }
    let sub_term = |idx: &BTreeMap<i64, Vec<usize>>, j: i64| -> FreeModule {
        let t = p.term(j);
        FreeModule::new(ring.clone(), idx[&j].iter().map(|&g| t.degree(g)).collect())
    };
    let block = |rows: &[usize], cols: &[usize], d: &GradedMap| -> Vec<ModElem> {
        cols.iter()
            .map(|&s| {
                ModElem::from_comps(rows.iter().map(|&t| d.entry(t, s).clone()).collect())
            })
            .collect()
    };
    // The subcomplex-violating block must be zero entry by entry.
    for j in p.lo()..p.hi() {
        let d = p.diff(j);
        for &s in &prec_idx[&j] {
            for &t in &succ_idx[&(j + 1)] {
                if !d.entry(t, s).is_zero() {
                    return Err(KernelError::CertificateViolation {
                        reason: format!(
                            "differential at index {j} maps a generator of degree < {i} \
                             to one of degree >= {i} (row {t}, column {s})"
                        ),
                    });
                }
            }
        }
    }
    let mut prec_terms = Vec::new();
    let mut succ_terms = Vec::new();
    let mut prec_diffs = Vec::new();
    let mut succ_diffs = Vec::new();
    for j in p.lo()..=p.hi() {
        prec_terms.push(sub_term(&prec_idx, j));
        succ_terms.push(sub_term(&succ_idx, j));
    }
    for j in p.lo()..p.hi() {
        let d = p.diff(j);
        let k = (j - p.lo()) as usize;
        prec_diffs.push(GradedMap::new(
            prec_terms[k].clone(),
            prec_terms[k + 1].clone(),
            block(&prec_idx[&(j + 1)], &prec_idx[&j], &d),
        )?);
        succ_diffs.push(GradedMap::new(
            succ_terms[k].clone(),
            succ_terms[k + 1].clone(),
            block(&succ_idx[&(j + 1)], &succ_idx[&j], &d),
        )?);
    }
    // The subcomplex is bounded: omitted components have no generators of
    // degree < i, so its tail is zero.
    let prec = FreeComplex::new(ring.clone(), p.lo(), prec_terms, prec_diffs, None)?;
    let succ = FreeComplex::new(ring.clone(), p.lo(), succ_terms, succ_diffs, p.band())?;
    let mut incl_maps = BTreeMap::new();
    let mut proj_maps = BTreeMap::new();
    let mut conn_maps = BTreeMap::new();
    for j in p.lo()..=p.hi() {
        let t = p.term(j);
        let cols: Vec<ModElem> = prec_idx[&j]
            .iter()
            .map(|&g| {
                let mut comps = vec![Poly::zero(); t.rank()];
                comps[g] = one_poly(&ring);
                ModElem::from_comps(comps)
            })
            .collect();
        incl_maps.insert(j, GradedMap::new(prec.term(j), t.clone(), cols)?);
        let cols: Vec<ModElem> = (0..t.rank())
            .map(|g| {
                let mut comps = vec![Poly::zero(); succ_idx[&j].len()];
                if let Some(pos) = succ_idx[&j].iter().position(|&h| h == g) {
                    comps[pos] = one_poly(&ring);
                }
                ModElem::from_comps(comps)
            })
            .collect();
        proj_maps.insert(j, GradedMap::new(t, succ.term(j), cols)?);
    }
    for j in p.lo()..p.hi() {
        let d = p.diff(j);
        conn_maps.insert(
            j,
            GradedMap::new(
                succ.term(j),
                prec.term(j + 1),
                block(&prec_idx[&(j + 1)], &succ_idx[&j], &d),
            )?,
        );
    }
    let inclusion = ChainMap::new(prec.clone(), p.clone(), incl_maps)?;
    let projection = ChainMap::new(p.clone(), succ.clone(), proj_maps)?;
    let connecting = ChainMap::new(succ.clone(), prec.shift(1), conn_maps)?;
    Ok(SplitProjectives { prec, succ, inclusion, projection, connecting })
}

#[cfg(test)]
mod tests {
    use super::*;
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

    /// Koszul complex of (x, y): A(-2) -> A(-1)^2 -> A in indices [-2, 0].
    fn koszul_xy(r: &GradedRing) -> FreeComplex {
        let t2 = FreeModule::new(r.clone(), vec![2]);
        let t1 = FreeModule::new(r.clone(), vec![1, 1]);
        let t0 = FreeModule::new(r.clone(), vec![0]);
        let d2 = GradedMap::new(
            t2.clone(),
            t1.clone(),
            vec![ModElem::from_comps(vec![pp(r, "y"), pp(r, "0-x")])],
        )
        .unwrap();
        let d1 = GradedMap::new(
            t1.clone(),
            t0.clone(),
            vec![
                ModElem::from_comps(vec![pp(r, "x")]),
                ModElem::from_comps(vec![pp(r, "y")]),
            ],
        )
        .unwrap();
        FreeComplex::new(r.clone(), -2, vec![t2, t1, t0], vec![d2, d1], None).unwrap()
    }

    #[test]
    fn constructor_rejects_nonzero_composite() {
        let r = ring(&[("x", 1)], &[]);
        let d1 = map1(&r, 2, 1, "x");
        let d0 = map1(&r, 1, 0, "x");
        let terms = vec![
            FreeModule::new(r.clone(), vec![2]),
            FreeModule::new(r.clone(), vec![1]),
            FreeModule::new(r.clone(), vec![0]),
        ];
        let err = FreeComplex::new(r.clone(), -2, terms, vec![d1, d0], None).unwrap_err();
        match err {
            KernelError::NotAComplex { index } => assert_eq!(index, -2),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn koszul_cohomology_is_the_residue_field() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let k = koszul_xy(&r);
        let h0 = k.cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
        assert!(k.cohomology(-1).unwrap().is_zero_module().unwrap());
        assert!(k.cohomology(-2).unwrap().is_zero_module().unwrap());
        assert!(k.cohomology(-3).unwrap().is_zero_module().unwrap());
        assert!(k.cohomology(5).unwrap().is_zero_module().unwrap());
    }

    #[test]
    fn banded_edge_is_unanswerable_and_below_is_certified_zero() {
        let r = ring(&[("u", 1)], &["u^2"]);
        // Visible window [-1, 0] of the infinite resolution of k.
        let d = map1(&r, 1, 0, "u");
        let x = FreeComplex::new(
            r.clone(),
            -1,
            vec![FreeModule::new(r.clone(), vec![1]), FreeModule::new(r.clone(), vec![0])],
            vec![d],
            Some(BandCertificate { min_gen_degree: 2 }),
        )
        .unwrap();
        assert!(x.cohomology(-2).unwrap().is_zero_module().unwrap());
        match x.cohomology(-1).unwrap_err() {
            KernelError::WindowExceeded { index, lo, hi } => {
                assert_eq!((index, lo, hi), (-1, -1, 0));
            }
            e => panic!("unexpected {e:?}"),
        }
        let h0 = x.cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
    }

    #[test]
    fn dualize_is_an_involution_and_computes_ext() {
        let r = ring(&[("x", 1)], &[]);
        // x: A(-1) -> A in indices [-1, 0]; its dual sits in [0, 1] and has
        // H^1 = k(1), one dimension in internal degree -1.
        let d = map1(&r, 1, 0, "x");
        let x = FreeComplex::new(
            r.clone(),
            -1,
            vec![FreeModule::new(r.clone(), vec![1]), FreeModule::new(r.clone(), vec![0])],
            vec![d],
            None,
        )
        .unwrap();
        let dx = x.dualize().unwrap();
        assert_eq!((dx.lo(), dx.hi()), (0, 1));
        assert_eq!(dx.term(0).degrees(), &[0]);
        assert_eq!(dx.term(1).degrees(), &[-1]);
        let h1 = dx.cohomology(1).unwrap();
        assert_eq!(kdim(&h1, -1), 1);
        assert_eq!(kdim(&h1, 0), 0);
        assert!(dx.cohomology(0).unwrap().is_zero_module().unwrap());
        // Involution: matrices and frames return exactly.
        let ddx = dx.dualize().unwrap();
        assert_eq!(ddx.lo(), x.lo());
        for j in x.lo()..=x.hi() {
            assert!(ddx.term(j).same_module(&x.term(j)));
            assert!(ddx.diff(j).sub(&x.diff(j)).is_zero());
        }
    }

    #[test]
    fn cone_of_multiplication_has_the_cokernel_as_h0() {
        let r = ring(&[("x", 1)], &[]);
        let a1 = FreeComplex::concentrated(FreeModule::new(r.clone(), vec![1]), 0);
        let a0 = FreeComplex::concentrated(FreeModule::new(r.clone(), vec![0]), 0);
        let mut maps = BTreeMap::new();
        maps.insert(0, map1(&r, 1, 0, "x"));
        let f = ChainMap::new(a1.clone(), a0.clone(), maps).unwrap();
        let c = cone(&f).unwrap();
        let h0 = c.cohomology(0).unwrap();
        assert_eq!(kdim(&h0, 0), 1);
        assert_eq!(kdim(&h0, 1), 0);
        assert!(c.cohomology(-1).unwrap().is_zero_module().unwrap());
    }

    #[test]
    fn cone_of_identity_is_exact_and_minimizes_to_zero() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let k = koszul_xy(&r);
        let c = cone(&ChainMap::identity(&k)).unwrap();
        for j in c.lo() - 1..=c.hi() + 1 {
            assert!(c.cohomology(j).unwrap().is_zero_module().unwrap(), "H^{j}");
        }
        let m = c.minimize().unwrap();
        assert_eq!(m.total_rank(), 0);
    }

    #[test]
    fn cone_euler_characteristic_matches_target_minus_source() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let k = koszul_xy(&r);
        // Inclusion of the degree-0 part A -> Koszul in index 0 is not a
        // chain map; use multiplication by x on the whole complex instead.
        let mut maps = BTreeMap::new();
        for j in k.lo()..=k.hi() {
            let t = k.term(j);
            let cols = (0..t.rank())
                .map(|s| {
                    let mut comps = vec![Poly::zero(); t.rank()];
                    comps[s] = pp(&r, "x");
                    ModElem::from_comps(comps)
                })
                .collect();
            maps.insert(j, GradedMap::new(t.twist(-1), t.clone(), cols).unwrap());
        }
        let src = k.twist(-1);
        let f = ChainMap::new(src.clone(), k.clone(), maps).unwrap();
        let c = cone(&f).unwrap();
        for e in -1..4 {
            let mut chi = 0i64;
            for j in c.lo()..=c.hi() {
                let sign = if (j.rem_euclid(2)) == 0 { 1 } else { -1 };
                chi += sign * kdim(&c.cohomology(j).unwrap(), e) as i64;
                chi -= sign * kdim(&k.cohomology(j).unwrap(), e) as i64;
                chi += sign * kdim(&src.cohomology(j).unwrap(), e) as i64;
            }
            assert_eq!(chi, 0, "internal degree {e}");
        }
    }

    #[test]
    fn shift_moves_window_and_flips_sign() {
        let r = ring(&[("x", 1)], &[]);
        let d = map1(&r, 1, 0, "x");
        let x = FreeComplex::new(
            r.clone(),
            -1,
            vec![FreeModule::new(r.clone(), vec![1]), FreeModule::new(r.clone(), vec![0])],
            vec![d.clone()],
            None,
        )
        .unwrap();
        let s = x.shift(1);
        assert_eq!((s.lo(), s.hi()), (-2, -1));
        assert!(s.diff(-2).add(&d).is_zero());
        let s2 = x.shift(2);
        assert_eq!((s2.lo(), s2.hi()), (-3, -2));
        assert!(s2.diff(-3).sub(&d).is_zero());
    }

    #[test]
    fn split_projectives_partitions_ranks_and_commutes() {
        let r = ring(&[("u", 1)], &["u^2"]);
        // Resolution window of k over k[u]/(u^2): gens in degrees 0,1,2.
        let t = |d: i64| FreeModule::new(r.clone(), vec![d]);
        let x = FreeComplex::new(
            r.clone(),
            -2,
            vec![t(2), t(1), t(0)],
            vec![map1(&r, 2, 1, "u"), map1(&r, 1, 0, "u")],
            Some(BandCertificate { min_gen_degree: 3 }),
        )
        .unwrap();
        let s = split_projectives(&x, 1).unwrap();
        assert_eq!(s.prec.term(0).degrees(), &[0]);
        assert_eq!(s.prec.term(-1).rank(), 0);
        assert_eq!(s.succ.term(-1).degrees(), &[1]);
        assert_eq!(s.succ.term(-2).degrees(), &[2]);
        assert_eq!(s.succ.term(0).rank(), 0);
        assert!(s.succ.band().is_some());
        assert!(s.prec.band().is_none());
        // Degreewise split: ranks add per index and internal degree.
        for j in -2..=0 {
            for e in 0..3 {
                let whole = slice_value(&PresentedModule::free(x.term(j)), e)
                    .unwrap()
                    .k_dimension()
                    .unwrap();
                let a = slice_value(&PresentedModule::free(s.prec.term(j)), e)
                    .unwrap()
                    .k_dimension()
                    .unwrap();
                let b = slice_value(&PresentedModule::free(s.succ.term(j)), e)
                    .unwrap()
                    .k_dimension()
                    .unwrap();
                assert_eq!(whole, a + b);
            }
        }
        // The connecting component at -1 carries u: A(-1) -> A.
        let h = s.connecting.component(-1);
        assert_eq!(h.entry(0, 0), &pp(&r, "u"));
    }

    #[test]
    fn split_requires_a_strong_enough_certificate() {
        let r = ring(&[("u", 1)], &["u^2"]);
        let t = |d: i64| FreeModule::new(r.clone(), vec![d]);
        let x = FreeComplex::new(
            r.clone(),
            -1,
            vec![t(1), t(0)],
            vec![map1(&r, 1, 0, "u")],
            Some(BandCertificate { min_gen_degree: 1 }),
        )
        .unwrap();
        assert!(matches!(
            split_projectives(&x, 2),
            Err(KernelError::MissingBandCertificate { .. })
        ));
        assert!(split_projectives(&x, 1).is_ok());
        // Fully materialized complexes split without a certificate.
        let y = FreeComplex::new(
            r.clone(),
            -1,
            vec![t(1), t(0)],
            vec![map1(&r, 1, 0, "u")],
            None,
        )
        .unwrap();
        let s = split_projectives(&y, 1).unwrap();
        assert_eq!(s.prec.term(0).degrees(), &[0]);
        assert_eq!(s.succ.term(-1).degrees(), &[1]);
    }

    #[test]
    fn minimize_strips_unit_entries_only() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        // d = [[1, x], [0, y]] from A + A(-1) to A + A; the unit entry
        // couples one summand pair, and elimination leaves y: A(-1) -> A.
        let src = FreeModule::new(r.clone(), vec![0, 1]);
        let tgt = FreeModule::new(r.clone(), vec![0, 0]);
        let d = GradedMap::new(
            src.clone(),
            tgt.clone(),
            vec![
                ModElem::from_comps(vec![pp(&r, "1"), pp(&r, "0")]),
                ModElem::from_comps(vec![pp(&r, "x"), pp(&r, "y")]),
            ],
        )
        .unwrap();
        let x = FreeComplex::new(r.clone(), 0, vec![src, tgt], vec![d], None).unwrap();
        let m = x.minimize().unwrap();
        assert_eq!(m.term(0).degrees(), &[1]);
        assert_eq!(m.term(1).degrees(), &[0]);
        assert_eq!(m.diff(0).entry(0, 0), &pp(&r, "y"));
        for j in 0..=1 {
            for e in 0..3 {
                let a = slice_value(&x.cohomology(j).unwrap(), e).unwrap();
                let b = slice_value(&m.cohomology(j).unwrap(), e).unwrap();
                assert_eq!(a, b, "H^{j} degree {e}");
            }
        }
    }

    #[test]
    fn minimize_rejects_pid_base() {
        let r = ring(&[("z", 0), ("T", 1)], &["z^2*T"]);
        let x = FreeComplex::zero(r);
        assert!(matches!(x.minimize(), Err(KernelError::UnsupportedBase { .. })));
    }
}
