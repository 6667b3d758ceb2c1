//! Randomized property suite for the exact-arithmetic layer: ring axioms,
//! gcd contracts, canonical-form invariance, and the evaluation homomorphism.

use std::collections::BTreeMap;

use proptest::prelude::*;
use wz_algebra::{poly_gcd, rat, MultiPoly, Rat, RatFunc};

const VARS: [&str; 3] = ["k", "n", "x"];

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

/// Small random polynomial in up to three variables.  Sizes mirror the
/// degrees certificates actually have; gcd cost grows steeply past them.
fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((arb_rat(), prop::collection::vec(0u32..=2, 3)), 0..4).prop_map(
        |terms| {
            let mut p = MultiPoly::zero();
            for (c, exps) in terms {
                let mut t = MultiPoly::constant(c);
                for (v, &e) in VARS.iter().zip(exps.iter()) {
                    if e > 0 {
                        t = &t * &MultiPoly::var(v).pow(e);
                    }
                }
                p = &p + &t;
            }
            p
        },
    )
}

fn arb_nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Even smaller bivariate polynomial for the tests that multiply three
/// random polynomials together.
fn arb_tiny_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((arb_rat(), 0u32..=2, 0u32..=2), 1..3).prop_map(|terms| {
        let mut p = MultiPoly::zero();
        for (c, ek, en) in terms {
            let mut t = MultiPoly::constant(c);
            if ek > 0 {
                t = &t * &MultiPoly::var("k").pow(ek);
            }
            if en > 0 {
                t = &t * &MultiPoly::var("n").pow(en);
            }
            p = &p + &t;
        }
        p
    })
}

fn arb_tiny_nonzero() -> impl Strategy<Value = MultiPoly> {
    arb_tiny_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_point() -> impl Strategy<Value = BTreeMap<String, Rat>> {
    prop::collection::vec(arb_rat(), 3).prop_map(|vals| {
        VARS.iter().map(|v| v.to_string()).zip(vals).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn addition_commutes(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn gcd_divides_both(a in arb_nonzero_poly(), b in arb_nonzero_poly()) {
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(a.exact_div(&g).is_some());
        prop_assert!(b.exact_div(&g).is_some());
    }

    #[test]
    fn gcd_sees_planted_common_factor(a in arb_tiny_nonzero(), b in arb_tiny_nonzero(), f in arb_tiny_nonzero()) {
        let g = poly_gcd(&(&a * &f), &(&b * &f)).unwrap();
        // The planted factor divides the gcd.
        prop_assert!(g.exact_div(&f.int_primitive().1).is_some());
    }

    #[test]
    fn normalization_ignores_common_factors(
        a in arb_tiny_poly(),
        b in arb_tiny_nonzero(),
        c in arb_tiny_nonzero(),
    ) {
        let plain = RatFunc::new(a.clone(), b.clone()).unwrap();
        let scaled = RatFunc::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(plain, scaled);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), point in arb_point()) {
        let sum = (&a + &b).eval(&point).unwrap();
        let prod = (&a * &b).eval(&point).unwrap();
        let ea = a.eval(&point).unwrap();
        let eb = b.eval(&point).unwrap();
        prop_assert_eq!(sum, ea.clone() + eb.clone());
        prop_assert_eq!(prod, ea * eb);
    }

    #[test]
    fn ratfunc_addition_matches_evaluation(
        a in arb_tiny_poly(), b in arb_tiny_nonzero(),
        c in arb_tiny_poly(), d in arb_tiny_nonzero(),
        point in arb_point(),
    ) {
        let r1 = RatFunc::new(a, b).unwrap();
        let r2 = RatFunc::new(c, d).unwrap();
        let sum = &r1 + &r2;
        // Skip points where any denominator vanishes.
        if let (Ok(e1), Ok(e2), Ok(es)) = (r1.eval(&point), r2.eval(&point), sum.eval(&point)) {
            prop_assert_eq!(es, e1 + e2);
        }
    }

    #[test]
    fn shift_then_unshift_is_identity(a in arb_poly(), delta in -3i64..=3) {
        let there = a.shift_var("n", delta);
        let back = there.shift_var("n", -delta);
        prop_assert_eq!(back, a);
    }
}
