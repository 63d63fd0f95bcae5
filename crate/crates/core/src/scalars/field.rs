//! Exact coefficient arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every element carries enough information to perform arithmetic without an
//! external context: rationals are self-contained and prime-field elements
//! store their modulus. Mixing elements of different fields is a programming
//! error and panics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Euclid, One, Signed, Zero};
use std::fmt;

/// Default modulus used when a prime field is requested without an explicit prime.
pub const DEFAULT_PRIME: u64 = 32003;

/// Descriptor of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers with arbitrary-precision arithmetic.
    Rational,
    /// The prime field of the given order.
    Prime(u64),
}

impl Field {
    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Q(BigRational::zero()),
            Field::Prime(p) => FieldElement::Fp { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Q(BigRational::one()),
            Field::Prime(p) => FieldElement::Fp { val: 1 % p, p: *p },
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                FieldElement::Fp { val: m, p: *p }
            }
        }
    }

    pub fn element_from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Q(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let m = n.rem_euclid(&BigInt::from(*p));
                let (_, digits) = m.to_u64_digits();
                FieldElement::Fp { val: digits.first().copied().unwrap_or(0), p: *p }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of the coefficient field: exact rational or residue mod p.
///
/// Invariant: for `Fp` the value satisfies `0 <= val < p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Q(BigRational),
    Fp { val: u64, p: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Q(_) => Field::Rational,
            FieldElement::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_zero(),
            FieldElement::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_one(),
            FieldElement::Fp { val, p } => *val == 1 % p,
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a + b),
            (FieldElement::Fp { val: a, p }, FieldElement::Fp { val: b, p: q }) => {
                assert_eq!(p, q, "prime field mismatch");
                FieldElement::Fp { val: (a + b) % p, p: *p }
            }
            _ => panic!("field mismatch in addition"),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Q(a) => FieldElement::Q(-a),
            FieldElement::Fp { val, p } => FieldElement::Fp { val: (p - val) % p, p: *p },
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Q(a), FieldElement::Q(b)) => FieldElement::Q(a * b),
            (FieldElement::Fp { val: a, p }, FieldElement::Fp { val: b, p: q }) => {
                assert_eq!(p, q, "prime field mismatch");
                FieldElement::Fp { val: mulmod(*a, *b, *p), p: *p }
            }
            _ => panic!("field mismatch in multiplication"),
        }
    }

    /// Multiplicative inverse. Panics on zero; division by zero is always a bug here.
    pub fn inv(&self) -> FieldElement {
        match self {
            FieldElement::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                FieldElement::Q(a.recip())
            }
            FieldElement::Fp { val, p } => {
                assert!(*val != 0, "inverse of zero");
                FieldElement::Fp { val: powmod(*val, p - 2, *p), p: *p }
            }
        }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    /// True if the element renders with a leading minus sign; used only for
    /// display layout. Prime-field residues never do.
    pub fn is_display_negative(&self) -> bool {
        match self {
            FieldElement::Q(r) => r.is_negative(),
            FieldElement::Fp { .. } => false,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}
