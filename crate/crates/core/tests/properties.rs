use proptest::prelude::*;

use sugawara::brauer::{BrauerDiagram, BrauerElement};
use sugawara::coeff::{KPoly, OmegaPoly, RatFun, Rational};
use sugawara::osp::OspStructure;
use sugawara::ssv::{phi_integral, Context};
use sugawara::superspace::{random_operator, Rho, Signature};
use sugawara::uea::{Engine, Gen, Mode, Monomial, VacuumElement};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rational::frac(p, q))
}

fn omega_poly() -> impl Strategy<Value = OmegaPoly> {
    prop::collection::vec(rational(), 0..4).prop_map(OmegaPoly::from_coeffs)
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (omega_poly(), omega_poly()).prop_filter_map("nonzero denominator", |(p, q)| RatFun::normalize(p, q).ok())
}

fn signature() -> impl Strategy<Value = Signature> {
    prop::sample::select(vec![(1, 1), (2, 1), (3, 1), (0, 1), (3, 0), (2, 0)])
        .prop_map(|(m, n)| Signature::new(m, n).unwrap())
}

fn element(m: usize) -> impl Strategy<Value = BrauerElement> {
    let count = BrauerDiagram::all(m).unwrap().len();
    prop::collection::vec((0..count, -3i64..=3), 1..4).prop_map(move |terms| {
        let all = BrauerDiagram::all(m).unwrap();
        let mut x = BrauerElement::zero(m);
        for (i, c) in terms {
            x.add_term(all[i], RatFun::from_int(c));
        }
        x
    })
}

fn sized_elements(n: usize) -> impl Strategy<Value = Vec<BrauerElement>> {
    (1usize..=5).prop_flat_map(move |m| prop::collection::vec(element(m), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_ring_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Rational::ZERO, a.clone());
        prop_assert_eq!(&a * &Rational::ONE, a.clone());
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn poly_ring_axioms(a in omega_poly(), b in omega_poly(), c in omega_poly()) {
        prop_assert_eq!((&a * &b).mul_ref(&c), a.mul_ref(&(&b * &c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&OmegaPoly::zero()), a.clone());
        prop_assert_eq!(a.mul_ref(&OmegaPoly::one()), a.clone());
    }

    #[test]
    fn ratfun_ring_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&RatFun::zero()), a.clone());
        prop_assert_eq!(a.mul_ref(&RatFun::one()), a.clone());
    }

    #[test]
    fn normalizing_is_idempotent(a in ratfun()) {
        let again = RatFun::normalize(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn evaluation_is_multiplicative(a in ratfun(), b in ratfun(), w in rational()) {
        if let (Ok(x), Ok(y)) = (a.eval(&w), b.eval(&w)) {
            prop_assert_eq!(a.mul_ref(&b).eval(&w).unwrap(), &x * &y);
        }
    }

    #[test]
    fn brauer_product_is_associative(v in sized_elements(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let left = x.multiply(y).unwrap().multiply(z).unwrap();
        let right = x.multiply(&y.multiply(z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn partial_transposes_are_commuting_involutions(v in sized_elements(1), a in 0usize..5, b in 0usize..5) {
        let x = &v[0];
        let m = x.size();
        let (a, b) = (a % m, b % m);
        prop_assert_eq!(&x.partial_transpose(a).unwrap().partial_transpose(a).unwrap(), x);
        if a != b {
            let ab = x.partial_transpose(a).unwrap().partial_transpose(b).unwrap();
            let ba = x.partial_transpose(b).unwrap().partial_transpose(a).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn rho_is_multiplicative(
        (sig, x, y) in (signature(), 1usize..=3).prop_flat_map(|(sig, m)| (Just(sig), element(m), element(m)))
    ) {
        let rho = Rho::new(sig, x.size());
        let xy = rho.apply(&x.multiply(&y).unwrap()).unwrap();
        let prod = rho.apply(&x).unwrap().compose(&rho.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(xy, prod);
    }

    #[test]
    fn partial_supertraces_compose(sig in signature(), seed in any::<u64>(), a in 0usize..3, b in 0usize..3) {
        prop_assume!(a != b);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_operator(sig, 3, 12, &mut rng).unwrap();
        let first = x.partial_supertrace(&[a]).unwrap();
        let b_after = if b > a { b - 1 } else { b };
        let twice = first.partial_supertrace(&[b_after]).unwrap();
        prop_assert_eq!(twice, x.partial_supertrace(&[a, b]).unwrap());
    }

    #[test]
    fn u_multiply_adds_parities(sig in signature(), seed in any::<u64>()) {
        let osp = std::sync::Arc::new(OspStructure::build(sig).unwrap());
        let engine = Engine::new(osp.clone(), Mode::Vacuum);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random_element = |len: usize| {
            use rand::Rng;
            let mono: Monomial = (0..len).map(|_| engine.gen(rng.gen_range(0..osp.dim()), -rng.gen_range(1..=2))).collect();
            let mut v = VacuumElement::vacuum(Rational::ONE);
            for g in mono.iter().rev() {
                v = engine.act_gen(*g, &v);
            }
            v
        };
        let x = random_element(2);
        let y = random_element(2);
        let xy = engine.u_multiply(&x, &y);
        let px = x.terms().next().map(|_| x.parity());
        let py = y.terms().next().map(|_| y.parity());
        if let (Some(px), Some(py)) = (px, py) {
            if x.is_homogeneous(px) && y.is_homogeneous(py) && !xy.is_zero() {
                prop_assert!(xy.is_homogeneous((px + py) % 2));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn osp_structure_is_a_lie_superalgebra(m in 0usize..=4, n in 0usize..=1) {
        prop_assume!(m + 2 * n >= 2);
        let osp = OspStructure::build(Signature::new(m, n).unwrap()).unwrap();
        prop_assert_eq!(osp.self_check(), Vec::<String>::new());
        prop_assert_eq!(osp.dual_coxeter(), m as i64 - 2 * n as i64 - 2);
    }

    #[test]
    fn phi_is_even_with_negative_modes(sig in signature(), m in 2usize..=3) {
        let phi = phi_integral(&Context::new(sig).unwrap(), m).unwrap();
        prop_assert!(phi.value.is_homogeneous(0));
        prop_assert!(phi.value.terms().all(|(mono, _)| mono.iter().all(|g: &Gen| g.mode < 0)));
    }
}

#[test]
fn zero_iff_no_terms() {
    let mut v = VacuumElement::zero();
    assert!(v.is_zero());
    let g: Monomial = std::iter::once(Gen { mode: -1, basis: 0, odd: false }).collect();
    v.add_term(g.clone(), KPoly::one());
    assert!(!v.is_zero());
    v.add_term(g, KPoly::one().scale(&Rational::from_int(-1)));
    assert!(v.is_zero() && v.terms().next().is_none());
}
