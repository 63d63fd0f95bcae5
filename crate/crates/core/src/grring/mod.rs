//! Graded polynomial and quotient rings: monomial order, polynomials,
//! Groebner engine, and ring construction.

pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;

pub use groebner::{groebner_module, groebner_with_syzygies, GroebnerBasis, ModElem};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::PolyParser;
pub use poly::Poly;
pub use ring::{is_prime_u64, make_ring, BaseClass, GradedRing, RingElement};
