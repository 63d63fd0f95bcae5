//! Monomials and the global monomial order used by the whole kernel.
//!
//! The order compares weighted degree first, then total degree, then reverse
//! lexicographic with the zero-weight variables placed last. The middle tier
//! matters: with weight-0 variables present, weighted degree alone cannot
//! separate x from 1, and plain revlex would put x below 1 and break division
//! termination. Total degree restores a global order (every variable exceeds
//! 1) while keeping the weighted-degree-first behavior on positive weights.

use std::cmp::Ordering;

/// Exponent vector; index i is the exponent of variable i in ring order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[v] = 1;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, defined only when `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Weighted degree-reverse-lexicographic order data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<i64>,
    /// Variable indices in revlex scan sequence: zero-weight variables are
    /// scanned first (they sit last in the priority list), each block in
    /// reverse input order.
    scan: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(weights: Vec<i64>) -> Self {
        let mut scan: Vec<usize> = (0..weights.len()).filter(|&v| weights[v] == 0).rev().collect();
        scan.extend((0..weights.len()).filter(|&v| weights[v] > 0).rev());
        MonomialOrder { weights, scan }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.degree(a).cmp(&self.degree(b)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match a.total_degree().cmp(&b.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for &v in &self.scan {
            match a.0[v].cmp(&b.0[v]) {
                // Smaller exponent at the earliest scanned variable wins.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial(exps.to_vec())
    }

    #[test]
    fn standard_grevlex_on_three_variables() {
        let ord = MonomialOrder::new(vec![1, 1, 1]);
        // x*y^2 > x^2*z in grevlex: equal total degree, smaller final exponent wins.
        assert_eq!(ord.cmp(&m(&[1, 2, 0]), &m(&[2, 0, 1])), Greater);
        // Degree dominates everything.
        assert_eq!(ord.cmp(&m(&[0, 0, 3]), &m(&[1, 1, 0])), Greater);
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[1, 0, 0])), Equal);
    }

    #[test]
    fn every_variable_exceeds_one_even_at_weight_zero() {
        let ord = MonomialOrder::new(vec![0, 1]);
        let one = Monomial::one(2);
        assert_eq!(ord.cmp(&Monomial::var(2, 0), &one), Greater);
        assert_eq!(ord.cmp(&Monomial::var(2, 1), &one), Greater);
        // Positive weight beats any power of a weight-0 variable.
        assert_eq!(ord.cmp(&m(&[5, 0]), &m(&[0, 1])), Less);
    }

    #[test]
    fn order_is_multiplicative() {
        let ord = MonomialOrder::new(vec![0, 2, 1]);
        let pairs = [(m(&[1, 0, 2]), m(&[0, 1, 0])), (m(&[3, 1, 0]), m(&[0, 0, 1]))];
        let u = m(&[1, 1, 1]);
        for (a, b) in pairs {
            let before = ord.cmp(&a, &b);
            assert_eq!(ord.cmp(&a.mul(&u), &b.mul(&u)), before);
        }
    }

    #[test]
    fn lcm_and_quotient_round_trip() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3, 0]);
        let l = a.lcm(&b);
        assert_eq!(l, m(&[2, 3, 1]));
        assert_eq!(a.quotient(&l), m(&[0, 3, 0]));
        assert_eq!(b.quotient(&l), m(&[1, 0, 1]));
        assert!(a.gcd_is_one(&m(&[0, 5, 0])));
        assert!(!a.gcd_is_one(&b));
    }
}
