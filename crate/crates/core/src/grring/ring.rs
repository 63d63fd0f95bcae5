//! Graded rings A = k[x_1..x_m]/I with nonnegative integer weights.
//!
//! A ring owns its monomial order and a reduced Groebner basis of the
//! relation ideal; every `RingElement` is stored in normal form, so equality
//! of elements is equality of representations. The degree-zero part A_0 is
//! classified at construction: a field when every weight is positive, a
//! univariate polynomial ring when exactly one weight-0 variable exists and
//! no relation lives in degree 0, and unrestricted otherwise.

use super::groebner::{groebner_module, GroebnerBasis, ModElem};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use crate::error::KernelError;
use crate::scalars::{Field, FieldElement};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseClass {
    /// All weights positive: A_0 = k.
    Field,
    /// Exactly one weight-0 variable and no degree-0 relations: A_0 = k[x].
    UnivariatePid { var: usize },
    /// Anything else; degree-0 slices are presented, not classified.
    General,
}

impl BaseClass {
    pub fn name(&self) -> &'static str {
        match self {
            BaseClass::Field => "FIELD",
            BaseClass::UnivariatePid { .. } => "UNIVARIATE_PID",
            BaseClass::General => "GENERAL",
        }
    }
}

#[derive(Debug)]
pub struct RingData {
    field: Field,
    names: Vec<String>,
    weights: Vec<i64>,
    order: MonomialOrder,
    relations: Vec<Poly>,
    rel_gb: GroebnerBasis,
    base: BaseClass,
}

/// Shared handle to an immutable graded ring.
#[derive(Debug, Clone)]
pub struct GradedRing {
    data: Arc<RingData>,
}

pub fn make_ring(
    field: Field,
    variables: Vec<(String, i64)>,
    relations: Vec<Poly>,
) -> Result<GradedRing, KernelError> {
    if let Field::Prime(p) = field {
        if !is_prime_u64(p) {
            return Err(KernelError::NonPrimeModulus { p });
        }
    }
    for (name, w) in &variables {
        if *w < 0 {
            return Err(KernelError::NegativeWeight { name: name.clone(), weight: *w });
        }
    }
    let names: Vec<String> = variables.iter().map(|(n, _)| n.clone()).collect();
    let weights: Vec<i64> = variables.iter().map(|(_, w)| *w).collect();
    let order = MonomialOrder::new(weights.clone());

    let mut kept: Vec<Poly> = Vec::new();
    for (index, r) in relations.iter().enumerate() {
        match r.homogeneous_degree(&weights) {
            Err(detail) => {
                return Err(KernelError::InhomogeneousRelation { index, detail });
            }
            Ok(None) => {} // zero relation contributes nothing
            Ok(Some(_)) => kept.push(r.clone()),
        }
    }
    let rel_inputs: Vec<ModElem> =
        kept.iter().map(|p| ModElem::from_comps(vec![p.clone()])).collect();
    let rel_gb = groebner_module(&order, 1, &rel_inputs)?;

    let zero_weight: Vec<usize> = (0..weights.len()).filter(|&v| weights[v] == 0).collect();
    let has_degree_zero_relation = rel_gb
        .elements()
        .iter()
        .any(|e| e.comps[0].homogeneous_degree(&weights) == Ok(Some(0)));
    let base = match (zero_weight.len(), has_degree_zero_relation) {
        (0, _) => BaseClass::Field,
        (1, false) => BaseClass::UnivariatePid { var: zero_weight[0] },
        _ => BaseClass::General,
    };

    Ok(GradedRing {
        data: Arc::new(RingData { field, names, weights, order, relations: kept, rel_gb, base }),
    })
}

impl GradedRing {
    pub fn field(&self) -> Field {
        self.data.field
    }

    pub fn nvars(&self) -> usize {
        self.data.names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.data.names
    }

    pub fn weights(&self) -> &[i64] {
        &self.data.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.data.order
    }

    pub fn base_class(&self) -> BaseClass {
        self.data.base
    }

    pub fn relations(&self) -> &[Poly] {
        &self.data.relations
    }

    /// Reduced Groebner basis of the relation ideal, as rank-1 module rows.
    pub fn relation_gb(&self) -> &GroebnerBasis {
        &self.data.rel_gb
    }

    pub fn relation_gb_polys(&self) -> Vec<Poly> {
        self.data.rel_gb.elements().iter().map(|e| e.comps[0].clone()).collect()
    }

    pub fn same_ring(&self, other: &GradedRing) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn zero_weight_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.data.weights[v] == 0).collect()
    }

    pub fn positive_weight_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.data.weights[v] > 0).collect()
    }

    /// Largest positive weight; zero for rings with no positive-weight
    /// variable.
    pub fn max_positive_weight(&self) -> i64 {
        self.data.weights.iter().copied().filter(|&w| w > 0).max().unwrap_or(0)
    }

    /// Canonical representative of a polynomial modulo the relation ideal.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let nf = self.data.rel_gb.normal_form(&ModElem::from_comps(vec![p.clone()]));
        nf.comps.into_iter().next().unwrap_or_else(Poly::zero)
    }

    pub fn element(&self, p: Poly) -> RingElement {
        RingElement { ring: self.clone(), poly: self.normal_form(&p) }
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: self.clone(), poly: Poly::zero() }
    }

    pub fn one(&self) -> RingElement {
        self.element(Poly::term(Monomial::one(self.nvars()), self.data.field.one()))
    }

    pub fn var(&self, v: usize) -> RingElement {
        self.element(Poly::term(Monomial::var(self.nvars(), v), self.data.field.one()))
    }

    pub fn constant(&self, c: FieldElement) -> RingElement {
        self.element(Poly::term(Monomial::one(self.nvars()), c))
    }
}

/// Ring element stored in normal form modulo the relation ideal.
#[derive(Debug, Clone)]
pub struct RingElement {
    ring: GradedRing,
    poly: Poly,
}

impl RingElement {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        debug_assert!(self.ring.same_ring(&other.ring));
        // Normal forms are closed under addition.
        RingElement {
            ring: self.ring.clone(),
            poly: self.poly.add(self.ring.order(), &other.poly),
        }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        debug_assert!(self.ring.same_ring(&other.ring));
        RingElement {
            ring: self.ring.clone(),
            poly: self.poly.sub(self.ring.order(), &other.poly),
        }
    }

    pub fn neg(&self) -> RingElement {
        RingElement { ring: self.ring.clone(), poly: self.poly.neg() }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        debug_assert!(self.ring.same_ring(&other.ring));
        self.ring.element(self.poly.mul(self.ring.order(), &other.poly))
    }

    pub fn scale(&self, c: &FieldElement) -> RingElement {
        RingElement { ring: self.ring.clone(), poly: self.poly.scale(c) }
    }

    /// Weighted degree when homogeneous; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>, String> {
        self.poly.homogeneous_degree(self.ring.weights())
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.poly == other.poly
    }
}

impl Eq for RingElement {}

impl std::fmt::Display for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly.display(self.ring.var_names()))
    }
}

/// Deterministic Miller-Rabin, exact for all u64 inputs with the fixed
/// witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
