//! Sparse polynomials with terms kept sorted descending under a monomial order.
//!
//! Every constructor and arithmetic operation preserves the representation
//! invariant: terms strictly descending in the order, no zero coefficients.
//! All operations take the order explicitly; a `Poly` is only meaningful
//! relative to the order it was built with.

use super::monomial::{Monomial, MonomialOrder};
use crate::scalars::FieldElement;
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    terms: Vec<(Monomial, FieldElement)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms(order: &MonomialOrder, mut terms: Vec<(Monomial, FieldElement)>) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.add(&c);
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((m, c)),
            }
        }
        Poly { terms: out }
    }

    pub fn term(m: Monomial, c: FieldElement) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, order: &MonomialOrder, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, order: &MonomialOrder, other: &Poly) -> Poly {
        self.add(order, &other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect() }
    }

    /// Multiplication by a single term keeps the sorted invariant because the
    /// order is multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect() }
    }

    pub fn mul(&self, order: &MonomialOrder, other: &Poly) -> Poly {
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                acc.push((m.mul(n), c.mul(d)));
            }
        }
        Poly::from_terms(order, acc)
    }

    /// Weighted degree when homogeneous: `Ok(None)` for zero, error string
    /// naming the two clashing degrees otherwise.
    pub fn homogeneous_degree(&self, weights: &[i64]) -> Result<Option<i64>, String> {
        let mut deg: Option<i64> = None;
        for (m, _) in &self.terms {
            let d = m.weighted_degree(weights);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => {
                    return Err(format!("terms of degree {prev} and {d}"));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Renders with explicit `*` and `^`, terms in stored (descending) order.
    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_display_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = abs.to_string();
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(names[v].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[v], e));
                }
            }
            if factors.is_empty() {
                out.push_str(&coeff);
            } else {
                if coeff != "1" {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}
