use super::*;
use crate::brauer::BrauerElement;
use crate::coeff::Rational;
use crate::report::Status;
use crate::superspace::{Signature, SuperModule, TensorOperator};
use crate::uea::on_vacuum;

fn ctx(m: usize, n: usize) -> Context {
    Context::new(Signature::new(m, n).unwrap()).unwrap()
}

fn show(r: &crate::report::Report) {
    if !r.all_passed() {
        for c in r.failures() {
            eprintln!("{c:?}");
        }
    }
}

// Φ_2 = ½ str P_12 F[−1]_1 F[−1]_2, the identity part of H^(2) dropping out.
#[test]
fn phi2_is_half_the_traced_swap() {
    for (m, n) in [(1, 1), (3, 0), (0, 1)] {
        let c = ctx(m, n);
        let p = c.image(&BrauerElement::s(0, 1, 2)).unwrap();
        let v = c
            .act(&[Factor::F(-1, 0), Factor::F(-1, 1)], &on_vacuum(&TensorOperator::identity(c.signature(), 2).unwrap()))
            .unwrap();
        let expect = p.supertrace_of_product_with(&v, |a, x| x.scale(a)).unwrap().scale(&Rational::frac(1, 2));
        let phi = phi_integral(&c, 2).unwrap();
        assert_eq!(phi.value, expect);
        assert!(!phi.value.is_zero());
        assert_eq!(phi.expansion.len(), 1);
    }
}

#[test]
fn phi3_has_one_partition() {
    let c = ctx(1, 1);
    let phi = phi_integral(&c, 3).unwrap();
    let lambda = Partition::new(vec![2, 1]).unwrap();
    let w = &c.omega() + &Rational::ONE;
    assert_eq!(phi.value, traced_term(&c, &lambda).unwrap().scale(&w));
    assert_eq!(phi.expansion[0].c, 3);
    assert_eq!(phi.expansion[0].y, Rational::frac(0, 1));
}

#[test]
fn phi_invariants_hold() {
    for (m, n, k) in [(1, 1, 2), (1, 1, 3), (3, 0, 3), (0, 1, 3)] {
        let phi = phi_integral(&ctx(m, n), k).unwrap();
        assert!(phi_invariants(&phi).iter().all(|c| c.status == Status::Pass), "{m} {n} {k}");
    }
}

#[test]
fn small_annihilation() {
    for (m, n) in [(1, 1), (3, 0), (0, 1)] {
        let r = verify_annihilation(&ctx(m, n), 2, &[0, 1]).unwrap();
        show(&r);
        assert!(r.all_passed(), "{m} {n}");
    }
}

#[test]
fn small_equivalence() {
    for (m, n) in [(1, 1), (3, 0), (0, 1), (2, 1)] {
        let r = verify_equivalence(&ctx(m, n), 2).unwrap();
        show(&r);
        assert!(r.all_passed(), "{m} {n}");
    }
}

#[test]
fn small_odd_vanishing() {
    for (m, n) in [(1, 1), (3, 0)] {
        let r = verify_odd_vanishing(&ctx(m, n), 3).unwrap();
        show(&r);
        assert!(r.all_passed(), "{m} {n}");
    }
}

#[test]
fn small_psi() {
    for (m, n) in [(3, 0), (5, 0)] {
        let r = psi_relation_check(&ctx(m, n), 2, 2).unwrap();
        show(&r);
        assert!(r.all_passed(), "{m} {n}");
    }
}

#[test]
fn small_centrality() {
    for (m, n) in [(1, 1), (0, 1)] {
        for z in [1, 2] {
            let r = ev_centrality_check(&ctx(m, n), 2, &Rational::from_int(z)).unwrap();
            show(&r);
            assert!(r.all_passed(), "{m} {n} {z}");
        }
    }
}

#[test]
fn binomial_values() {
    assert_eq!(binomial(&Rational::from_int(3), 2), Rational::from_int(3));
    assert_eq!(binomial(&Rational::from_int(-1), 2), Rational::ONE);
    assert_eq!(binomial(&Rational::frac(1, 2), 0), Rational::ONE);
}

#[test]
fn identities_small() {
    for (m, n) in [(1, 1), (3, 0)] {
        let r = verify_rep_identities(&ctx(m, n), 2, 12, 7).unwrap();
        eprintln!("{r}");
        assert!(r.all_passed(), "{m} {n}");
    }
}
