//! Module Groebner bases over the free polynomial ring, with cofactor
//! tracking for lifts and syzygies.
//!
//! Elements live in a free module P^rank with the position-over-term order:
//! earlier positions dominate, ties broken by the monomial order. Every basis
//! element carries a cofactor vector expressing it as a combination of the
//! original inputs, so reductions double as membership certificates.
//!
//! Syzygies are harvested from S-pair reductions: a pair that reduces to zero
//! yields a relation among the inputs, and an input that reduces to zero on
//! insertion yields one as well. Together these generate the full syzygy
//! module of the inputs (S-pairs that produce a new basis element contribute
//! relations that are trivial in input coordinates). No pair-skipping
//! criteria are applied; each queued pair is reduced, which keeps the harvest
//! argument self-contained and the run deterministic.

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use crate::error::KernelError;
use crate::scalars::FieldElement;
use std::collections::BTreeSet;

const MAX_BASIS: usize = 50_000;
const MAX_SPAIRS: usize = 500_000;

/// Element of a free module P^rank; `comps[t]` is the coordinate at position t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModElem {
    pub comps: Vec<Poly>,
}

impl ModElem {
    pub fn zero(rank: usize) -> Self {
        ModElem { comps: vec![Poly::zero(); rank] }
    }

    pub fn from_comps(comps: Vec<Poly>) -> Self {
        ModElem { comps }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Leading term under position-over-term: the leading term of the first
    /// nonzero component.
    pub fn leading(&self) -> Option<(usize, &Monomial, &FieldElement)> {
        self.comps
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .map(|(pos, p)| {
                let (m, c) = p.leading_term().expect("nonzero poly has a leading term");
                (pos, m, c)
            })
    }

    pub fn add(&self, order: &MonomialOrder, other: &ModElem) -> ModElem {
        ModElem {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(order, b))
                .collect(),
        }
    }

    pub fn sub(&self, order: &MonomialOrder, other: &ModElem) -> ModElem {
        ModElem {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(order, b))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> ModElem {
        ModElem { comps: self.comps.iter().map(|p| p.mul_term(m, c)).collect() }
    }

    pub fn scale(&self, c: &FieldElement) -> ModElem {
        ModElem { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn neg(&self) -> ModElem {
        ModElem { comps: self.comps.iter().map(Poly::neg).collect() }
    }
}

#[derive(Debug, Clone)]
struct Tracked {
    el: ModElem,
    /// Cofactor vector over the inputs: `el == cof · inputs`.
    cof: Vec<Poly>,
}

/// A reduced Groebner basis with cofactors over the defining inputs.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    rank: usize,
    ninputs: usize,
    elements: Vec<ModElem>,
    cofactors: Vec<Vec<Poly>>,
    spairs_processed: usize,
}

/// Runs Buchberger without collecting syzygies.
pub fn groebner_module(
    order: &MonomialOrder,
    rank: usize,
    inputs: &[ModElem],
) -> Result<GroebnerBasis, KernelError> {
    let (gb, _) = run_buchberger(order, rank, inputs, false)?;
    Ok(gb)
}

/// Runs Buchberger and returns generators of the syzygy module of `inputs`,
/// each syzygy a vector of length `inputs.len()`.
pub fn groebner_with_syzygies(
    order: &MonomialOrder,
    rank: usize,
    inputs: &[ModElem],
) -> Result<(GroebnerBasis, Vec<Vec<Poly>>), KernelError> {
    run_buchberger(order, rank, inputs, true)
}

impl GroebnerBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ninputs(&self) -> usize {
        self.ninputs
    }

    /// Reduced basis elements, monic, sorted descending by leading term.
    pub fn elements(&self) -> &[ModElem] {
        &self.elements
    }

    /// Cofactor vector of `elements()[i]` over the inputs.
    pub fn cofactor(&self, i: usize) -> &[Poly] {
        &self.cofactors[i]
    }

    pub fn spairs_processed(&self) -> usize {
        self.spairs_processed
    }

    pub fn normal_form(&self, v: &ModElem) -> ModElem {
        self.normal_form_with_expr(v).0
    }

    /// Full normal form plus the expression used: `v == nf + expr · inputs`.
    pub fn normal_form_with_expr(&self, v: &ModElem) -> (ModElem, Vec<Poly>) {
        let tracked: Vec<Tracked> = self
            .elements
            .iter()
            .zip(&self.cofactors)
            .map(|(el, cof)| Tracked { el: el.clone(), cof: cof.clone() })
            .collect();
        reduce_full(&self.order, &tracked, v, self.ninputs)
    }

    pub fn contains(&self, v: &ModElem) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Expresses `v` as a combination of the inputs, or `None` when `v` is
    /// not in the submodule they generate. The returned coefficients `u`
    /// satisfy `v == u · inputs` exactly.
    pub fn lift(&self, v: &ModElem) -> Option<Vec<Poly>> {
        let (nf, expr) = self.normal_form_with_expr(v);
        if nf.is_zero() {
            Some(expr)
        } else {
            None
        }
    }

    /// Re-reduces every same-position S-pair of the stored basis and checks
    /// it reaches zero; returns the number of pairs checked.
    pub fn verify(&self) -> Result<usize, KernelError> {
        let tracked: Vec<Tracked> = self
            .elements
            .iter()
            .map(|el| Tracked { el: el.clone(), cof: Vec::new() })
            .collect();
        let mut checked = 0;
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let a = &self.elements[i];
                let b = &self.elements[j];
                let (Some((pa, ma, _)), Some((pb, mb, _))) = (a.leading(), b.leading()) else {
                    continue;
                };
                if pa != pb {
                    continue;
                }
                let l = ma.lcm(mb);
                let s = a
                    .mul_term(&ma.quotient(&l), &self.order_one())
                    .sub(&self.order, &b.mul_term(&mb.quotient(&l), &self.order_one()));
                let (nf, _) = reduce_full(&self.order, &tracked, &s, 0);
                if !nf.is_zero() {
                    return Err(KernelError::CertificateViolation {
                        reason: format!("S-pair ({i}, {j}) has nonzero normal form"),
                    });
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    fn order_one(&self) -> FieldElement {
        // The basis is monic, so any S-pair uses coefficient 1. The field is
        // recovered from a stored element.
        for el in &self.elements {
            if let Some((_, _, c)) = el.leading() {
                return c.field().one();
            }
        }
        crate::scalars::Field::Rational.one()
    }
}

/// Full tail reduction of `v` by `basis`; returns (normal form, expression)
/// with `v == nf + expr · inputs`. Reducers are chosen as the first match in
/// basis order, which keeps runs deterministic.
fn reduce_full(
    order: &MonomialOrder,
    basis: &[Tracked],
    v: &ModElem,
    ninputs: usize,
) -> (ModElem, Vec<Poly>) {
    let rank = v.rank();
    let mut work = v.clone();
    let mut out = ModElem::zero(rank);
    let mut expr = vec![Poly::zero(); ninputs];
    'outer: while let Some((pos, m, c)) = work.leading() {
        let (pos, m, c) = (pos, m.clone(), c.clone());
        for b in basis {
            let Some((bp, bm, _)) = b.el.leading() else { continue };
            if bp == pos && bm.divides(&m) {
                let q = bm.quotient(&m);
                work = work.sub(order, &b.el.mul_term(&q, &c));
                for (e, bc) in expr.iter_mut().zip(&b.cof) {
                    *e = e.add(order, &bc.mul_term(&q, &c));
                }
                continue 'outer;
            }
        }
        // No reducer: the leading term is part of the normal form.
        let t = Poly::term(m, c);
        out.comps[pos] = out.comps[pos].add(order, &t);
        work.comps[pos] = work.comps[pos].sub(order, &t);
    }
    (out, expr)
}

fn run_buchberger(
    order: &MonomialOrder,
    rank: usize,
    inputs: &[ModElem],
    want_syzygies: bool,
) -> Result<(GroebnerBasis, Vec<Vec<Poly>>), KernelError> {
    for (s, v) in inputs.iter().enumerate() {
        if v.rank() != rank {
            return Err(KernelError::DimensionMismatch {
                context: format!("input {s} has rank {} but the module has rank {rank}", v.rank()),
            });
        }
    }
    let ninputs = inputs.len();
    let mut basis: Vec<Tracked> = Vec::new();
    let mut syzygies: Vec<Vec<Poly>> = Vec::new();
    // Pair key: (lcm weighted degree, lcm exponents, position, i, j). The
    // tuple order is an arbitrary but fixed refinement of the normal
    // smallest-degree-first strategy.
    let mut queue: BTreeSet<(i64, Vec<u32>, usize, usize, usize)> = BTreeSet::new();
    let mut spairs_processed = 0usize;

    let unit_expr = |s: usize| -> Vec<Poly> {
        let mut e = vec![Poly::zero(); ninputs];
        e[s] = Poly::term(Monomial::one(order.nvars()), field_one(inputs));
        e
    };

    let insert = |basis: &mut Vec<Tracked>,
                      queue: &mut BTreeSet<(i64, Vec<u32>, usize, usize, usize)>,
                      el: ModElem,
                      cof: Vec<Poly>|
     -> Result<(), KernelError> {
        let (pos, m, c) = {
            let (p, m, c) = el.leading().expect("inserted element must be nonzero");
            (p, m.clone(), c.clone())
        };
        let inv = c.inv();
        let el = el.scale(&inv);
        let cof = cof.iter().map(|p| p.scale(&inv)).collect();
        let k = basis.len();
        if k + 1 > MAX_BASIS {
            return Err(KernelError::ResourceCapExceeded {
                what: "Groebner basis size".to_string(),
                limit: MAX_BASIS,
            });
        }
        for (i, b) in basis.iter().enumerate() {
            let Some((bp, bm, _)) = b.el.leading() else { continue };
            if bp == pos {
                let l = m.lcm(bm);
                queue.insert((order.degree(&l), l.0.clone(), pos, i, k));
            }
        }
        basis.push(Tracked { el, cof });
        Ok(())
    };

    #[allow(clippy::needless_range_loop)]
    for s in 0..ninputs {
        if inputs[s].is_zero() {
            if want_syzygies {
                syzygies.push(unit_expr(s));
            }
            continue;
        }
        let (nf, expr) = reduce_full(order, &basis, &inputs[s], ninputs);
        let mut cof = unit_expr(s);
        for (c, e) in cof.iter_mut().zip(&expr) {
            *c = c.sub(order, e);
        }
        if nf.is_zero() {
            if want_syzygies {
                syzygies.push(cof);
            }
        } else {
            insert(&mut basis, &mut queue, nf, cof)?;
        }
    }

    while let Some((_, _, _, i, j)) = queue.pop_first() {
        spairs_processed += 1;
        if spairs_processed > MAX_SPAIRS {
            return Err(KernelError::ResourceCapExceeded {
                what: "S-pairs processed".to_string(),
                limit: MAX_SPAIRS,
            });
        }
        let (s, scof) = {
            let a = &basis[i];
            let b = &basis[j];
            let (pa, ma, ca) = a.el.leading().expect("basis elements are nonzero");
            let (_, mb, cb) = b.el.leading().expect("basis elements are nonzero");
            debug_assert!(ca.is_one() && cb.is_one());
            let _ = pa;
            let one = ca.field().one();
            let l = ma.lcm(mb);
            let (qa, qb) = (ma.quotient(&l), mb.quotient(&l));
            let s = a.el.mul_term(&qa, &one).sub(order, &b.el.mul_term(&qb, &one));
            let scof: Vec<Poly> = a
                .cof
                .iter()
                .zip(&b.cof)
                .map(|(x, y)| x.mul_term(&qa, &one).sub(order, &y.mul_term(&qb, &one)))
                .collect();
            (s, scof)
        };
        let (nf, expr) = reduce_full(order, &basis, &s, ninputs);
        let mut cof = scof;
        for (c, e) in cof.iter_mut().zip(&expr) {
            *c = c.sub(order, e);
        }
        if nf.is_zero() {
            if want_syzygies && cof.iter().any(|p| !p.is_zero()) {
                syzygies.push(cof);
            }
        } else {
            insert(&mut basis, &mut queue, nf, cof)?;
        }
    }

    let (elements, cofactors) = inter_reduce(order, basis, ninputs);
    Ok((
        GroebnerBasis {
            order: order.clone(),
            rank,
            ninputs,
            elements,
            cofactors,
            spairs_processed,
        },
        syzygies,
    ))
}

fn field_one(inputs: &[ModElem]) -> FieldElement {
    for v in inputs {
        if let Some((_, _, c)) = v.leading() {
            return c.field().one();
        }
    }
    crate::scalars::Field::Rational.one()
}

/// Minimalizes (drops elements whose lead is divisible by another lead) and
/// tail-reduces, maintaining cofactors. The result is the unique reduced
/// basis, listed descending by leading term.
fn inter_reduce(
    order: &MonomialOrder,
    basis: Vec<Tracked>,
    ninputs: usize,
) -> (Vec<ModElem>, Vec<Vec<Poly>>) {
    let mut keep: Vec<Tracked> = Vec::new();
    // Scan ascending by leading term so each lead is tested against the
    // minimal candidates already kept.
    let mut sorted = basis;
    sorted.sort_by(|a, b| compare_leads(order, &a.el, &b.el));
    'cand: for t in sorted {
        let (pos, m, _) = match t.el.leading() {
            Some(l) => (l.0, l.1.clone(), ()),
            None => continue,
        };
        for k in &keep {
            let Some((kp, km, _)) = k.el.leading() else { continue };
            if kp == pos && km.divides(&m) {
                continue 'cand;
            }
        }
        keep.push(t);
    }
    keep.sort_by(|a, b| compare_leads(order, &b.el, &a.el));
    // Tail-reduce each element against the others; leads are pairwise
    // non-divisible so normal forms stay nonzero with the same lead.
    let snapshot = keep.clone();
    let mut elements = Vec::with_capacity(keep.len());
    let mut cofactors = Vec::with_capacity(keep.len());
    for (i, t) in keep.into_iter().enumerate() {
        let others: Vec<Tracked> =
            snapshot.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, k)| k.clone()).collect();
        let (nf, expr) = reduce_full(order, &others, &t.el, ninputs);
        let mut cof = t.cof;
        for (c, e) in cof.iter_mut().zip(&expr) {
            *c = c.sub(order, e);
        }
        debug_assert!(!nf.is_zero());
        elements.push(nf);
        cofactors.push(cof);
    }
    (elements, cofactors)
}

fn compare_leads(order: &MonomialOrder, a: &ModElem, b: &ModElem) -> std::cmp::Ordering {
    match (a.leading(), b.leading()) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some((pa, ma, _)), Some((pb, mb, _))) => {
            // Position-over-term: earlier position is greater.
            pb.cmp(&pa).then_with(|| order.cmp(ma, mb))
        }
    }
}
