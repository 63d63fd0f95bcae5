//! Degreewise truncation M_{>=i} and the complementary quotient.
//!
//! The truncation is generated by the A_0-generators of the slices in the
//! window [i, max(i + w - 1, max generator degree)], where w is the largest
//! positive weight. Any element of degree above the window either sits on a
//! generator of that degree or is divisible by a positive-weight variable,
//! which steps it down into the window; so the window generates everything
//! in degrees >= i.

use crate::error::KernelError;
use crate::grmod::free::{FreeModule, GradedMap};
use crate::grmod::presented::{cokernel, image, ModuleMap, PresentedModule};
use crate::grmod::slice::slice_generators;
use crate::grring::ModElem;

/// The submodule of elements in degrees >= i, presented, with its inclusion.
pub fn truncate_geq(
    module: &PresentedModule,
    i: i64,
) -> Result<(PresentedModule, ModuleMap), KernelError> {
    let ring = module.ring().clone();
    let empty = FreeModule::new(ring.clone(), vec![]);
    let max_gen = match module.max_gen_degree() {
        Some(d) => d,
        None => {
            // Zero module: the truncation is zero with the zero inclusion.
            let z = PresentedModule::free(empty);
            let incl = ModuleMap::zero(&z, module);
            return Ok((z, incl));
        }
    };
    let hi = (i + ring.max_positive_weight() - 1).max(max_gen);
    let mut cols: Vec<ModElem> = Vec::new();
    let mut degs: Vec<i64> = Vec::new();
    for j in i..=hi {
        for g in slice_generators(module, j)? {
            if g.is_zero() {
                continue;
            }
            cols.push(g);
            degs.push(j);
        }
    }
    let frame = FreeModule::new(ring, degs);
    let free_src = PresentedModule::free(frame.clone());
    let map = GradedMap::new(frame, module.gens().clone(), cols)?;
    let f = ModuleMap::new_unchecked(free_src, module.clone(), map);
    image(&f)
}

/// The quotient M / M_{>=i}, supported in degrees < i.
pub fn quotient_below(
    module: &PresentedModule,
    i: i64,
) -> Result<PresentedModule, KernelError> {
    let (_, incl) = truncate_geq(module, i)?;
    Ok(cokernel(&incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmod::slice::{slice_k_dimension, slice_value};
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

    #[test]
    fn truncation_preserves_high_slices_and_kills_low_ones() {
        let r = ring(&[("x", 1), ("y", 1)], &["x^2 + y^2"]);
        let m = PresentedModule::free(FreeModule::new(r.clone(), vec![0, 1]))
            .twist(0);
        for i in -1i64..=3 {
            let (t, incl) = truncate_geq(&m, i).unwrap();
            assert!(incl.is_zero_map().unwrap() == t.is_zero_module().unwrap());
            for j in (i - 2)..=(i + 4) {
                let got = slice_value(&t, j).unwrap();
                if j >= i {
                    assert_eq!(got, slice_value(&m, j).unwrap(), "i={i} j={j}");
                } else {
                    assert!(got.is_zero(), "i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn quotient_slices_complement_the_truncation() {
        let r = ring(&[("x", 1), ("y", 1)], &[]);
        let m = PresentedModule::ring_module(&r);
        let i = 2;
        let q = quotient_below(&m, i).unwrap();
        let (t, _) = truncate_geq(&m, i).unwrap();
        for j in -1i64..=5 {
            let dm = slice_k_dimension(&m, j).unwrap().unwrap();
            let dt = slice_k_dimension(&t, j).unwrap().unwrap();
            let dq = slice_k_dimension(&q, j).unwrap().unwrap();
            assert_eq!(dm, dt + dq, "degree {j}");
            if j >= i {
                assert_eq!(dq, 0);
            } else {
                assert_eq!(dt, 0);
            }
        }
    }

    #[test]
    fn truncation_over_pid_base_tracks_torsion_generators() {
        // A = k[x][T]/(x^2 T): the degree->=1 part is generated by T with
        // annihilator (x^2), i.e. (A/(x^2))(-1).
        let r = ring(&[("x", 0), ("T", 1)], &["x^2*T"]);
        let a = PresentedModule::ring_module(&r);
        let (t, incl) = truncate_geq(&a, 1).unwrap();
        assert_eq!(t.gens().degrees(), &[1]);
        assert!(!incl.is_zero_map().unwrap());
        assert_eq!(slice_value(&t, 1).unwrap().k_dimension(), Some(2));
        assert!(slice_value(&t, 0).unwrap().is_zero());
        for j in 1..=3 {
            assert_eq!(slice_value(&t, j).unwrap(), slice_value(&a, j).unwrap());
        }
    }

    #[test]
    fn truncation_of_twist_matches_shifted_truncation() {
        // truncate(M(e), i) and truncate(M, e + i)(e) have equal slice values
        // everywhere: the inherited convention lock.
        let r = ring(&[("x", 1), ("y", 2)], &[]);
        let m = PresentedModule::free(FreeModule::new(r.clone(), vec![0, 1]));
        for e in -2i64..=2 {
            let lhs = truncate_geq(&m.twist(e), 0).unwrap().0;
            let rhs = truncate_geq(&m, e).unwrap().0.twist(e);
            for j in -3i64..=4 {
                assert_eq!(
                    slice_value(&lhs, j).unwrap(),
                    slice_value(&rhs, j).unwrap(),
                    "e={e} j={j}"
                );
            }
        }
    }
}
