//! Cross-checks between the symbolic and numeric faces of a term.
//!
//! The defining contract of `shift_quotient` is pointwise:
//! `t(v+1)/t(v) = q(v)` wherever `t(v) ≠ 0` and `q` has no pole.  These
//! tests generate random structured terms and verify the contract on
//! integer grids, plus algebraic round trips that exercise the atom
//! normalization (merging, parity folding, inversion).

use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;
use wz_algebra::{rat, MultiPoly, Rat};
use wz_hyperterm::{HyperTerm, LinForm};

fn lin(n_coeff: i64, k_coeff: i64, c: i64) -> LinForm {
    let mut coeffs = BTreeMap::new();
    coeffs.insert("n".to_string(), n_coeff);
    coeffs.insert("k".to_string(), k_coeff);
    LinForm::new(coeffs, rat(c, 1))
}

fn point(nv: i64, kv: i64) -> BTreeMap<String, Rat> {
    let mut p = BTreeMap::new();
    p.insert("n".to_string(), rat(nv, 1));
    p.insert("k".to_string(), rat(kv, 1));
    p
}

/// A random atom pushed onto a term; shapes chosen to stay hypergeometric
/// in both `n` and `k`.
fn arb_factor() -> impl Strategy<Value = fn(HyperTerm, i64, i64, i64) -> HyperTerm> {
    // Each returned function receives (term, a, b, c) with small a, b, c and
    // multiplies one atom in.  Using fn pointers keeps shrinking simple.
    let fns: Vec<fn(HyperTerm, i64, i64, i64) -> HyperTerm> = vec![
        |t, a, b, c| {
            t.mul_factorial(lin(a.rem_euclid(2), b.rem_euclid(2), c), if a % 2 == 0 { 1 } else { -1 })
                .unwrap()
        },
        |t, a, b, _| t.mul_binomial(lin(1, 0, a.rem_euclid(3)), lin(0, 1, b.rem_euclid(2)), 1).unwrap(),
        |t, a, _, c| {
            t.mul_pochhammer(LinForm::constant(rat(2 * a + 1, 2)), lin(0, 1, c.rem_euclid(2)), 1)
                .unwrap()
        },
        |t, _, b, _| {
            t.mul_power(
                MultiPoly::constant(rat(if b % 2 == 0 { 2 } else { 3 }, 1)),
                lin(1, 0, 0),
                -1,
            )
            .unwrap()
        },
        |t, _, _, c| t.mul_sign(lin(0, 1, c.rem_euclid(2))).unwrap(),
        |t, a, b, _| {
            let p = &MultiPoly::var("k").mul_rat(&rat(a.rem_euclid(3) + 1, 1))
                + &MultiPoly::constant(rat(b.rem_euclid(4) + 1, 1));
            t.mul_poly(p, 1).unwrap()
        },
    ];
    prop::sample::select(fns)
}

fn arb_term() -> impl Strategy<Value = HyperTerm> {
    (
        prop::collection::vec((arb_factor(), 0i64..3, 0i64..3, 0i64..3), 1..4),
        1i64..5,
    )
        .prop_map(|(factors, c)| {
            let mut t = HyperTerm::one().mul_rat(rat(c, 1)).unwrap();
            for (f, a, b, cc) in factors {
                t = f(t, a, b, cc);
            }
            t
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// t(n, k+1)/t(n, k) equals the symbolic k-quotient wherever defined.
    #[test]
    fn k_quotient_matches_pointwise(t in arb_term()) {
        let q = match t.shift_quotient("k") {
            Ok(q) => q,
            Err(_) => return Ok(()),
        };
        for nv in 0..=4i64 {
            for kv in 0..=4i64 {
                let here = match t.eval_exact(&point(nv, kv)) {
                    Ok(v) if !v.is_zero() => v,
                    _ => continue,
                };
                let next = match t.eval_exact(&point(nv, kv + 1)) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                if let Ok(qv) = q.eval(&point(nv, kv)) {
                    prop_assert_eq!(qv, next / here);
                }
            }
        }
    }

    /// The n-quotient passes the same pointwise test.
    #[test]
    fn n_quotient_matches_pointwise(t in arb_term()) {
        let q = match t.shift_quotient("n") {
            Ok(q) => q,
            Err(_) => return Ok(()),
        };
        for nv in 0..=4i64 {
            for kv in 0..=4i64 {
                let here = match t.eval_exact(&point(nv, kv)) {
                    Ok(v) if !v.is_zero() => v,
                    _ => continue,
                };
                let next = match t.eval_exact(&point(nv + 1, kv)) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                if let Ok(qv) = q.eval(&point(nv, kv)) {
                    prop_assert_eq!(qv, next / here);
                }
            }
        }
    }

    /// t · t⁻¹ collapses to 1 structurally, not just numerically.
    #[test]
    fn inverse_cancels_structurally(t in arb_term()) {
        let product = t.mul_term(&t.inv());
        prop_assert_eq!(product.atoms().len(), 0);
        prop_assert_eq!(product.constant(), &rat(1, 1));
    }

    /// Shifting forward then backward is the identity.
    #[test]
    fn shift_round_trip(t in arb_term()) {
        prop_assert_eq!(t.shift_var("k", 1).shift_var("k", -1), t.clone());
        prop_assert_eq!(t.shift_var("n", -2).shift_var("n", 2), t);
    }

    /// Within the resolved natural-support window lie all nonzero values:
    /// evaluation outside the window is exactly zero.
    #[test]
    fn support_windows_are_sound(t in arb_term()) {
        let s = match t.natural_support("k") {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        for nv in 0..=4i64 {
            let p = {
                let mut p = BTreeMap::new();
                p.insert("n".to_string(), rat(nv, 1));
                p
            };
            let Ok(Some((lo, hi))) = s.resolve(&p) else { continue };
            for kv in (lo - 3)..lo {
                if let Ok(v) = t.eval_exact(&point(nv, kv)) {
                    prop_assert!(v.is_zero(), "below support at n={} k={}", nv, kv);
                }
            }
            for kv in (hi + 1)..=(hi + 3) {
                if let Ok(v) = t.eval_exact(&point(nv, kv)) {
                    prop_assert!(v.is_zero(), "above support at n={} k={}", nv, kv);
                }
            }
        }
    }
}

/// The shifted-term quotient telescopes over several steps: the product of
/// q(k), q(k+1), …, q(k+m-1) equals t(k+m)/t(k).
#[test]
fn quotient_telescopes_over_multiple_steps() {
    let t = HyperTerm::one()
        .mul_binomial(lin(1, 0, 0), lin(0, 1, 0), 1)
        .unwrap()
        .mul_power(MultiPoly::constant(rat(2, 1)), lin(1, 0, 0), -1)
        .unwrap();
    let q = t.shift_quotient("k").unwrap();
    for nv in 2..=8i64 {
        for kv in 0..=(nv - 2) {
            let here = t.eval_exact(&point(nv, kv)).unwrap();
            if here.is_zero() {
                continue;
            }
            let mut acc = rat(1, 1);
            for step in 0..2 {
                acc *= q.eval(&point(nv, kv + step)).unwrap();
            }
            let there = t.eval_exact(&point(nv, kv + 2)).unwrap();
            assert_eq!(acc, there / here);
        }
    }
}
