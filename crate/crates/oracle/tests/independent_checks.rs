//! End-to-end oracle checks that cut across modules: summation of real
//! multi-variable terms, and randomized invariants for the q-series and
//! descent arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use wz_algebra::{rat, MultiPoly, Rat};
use wz_hyperterm::{HyperTerm, LinForm};
use wz_oracle::{exact_sum_multi, exact_sum_natural, sqrt2_descent, QSeries};

fn lin(coeffs: &[(&str, i64)], c: Rat) -> LinForm {
    LinForm::new(
        coeffs.iter().map(|&(v, a)| (v.to_string(), a)).collect(),
        c,
    )
}

/// n!/(k₁!k₂!(n−k₁−k₂)!) · x^{k₁} y^{k₂} z^{n−k₁−k₂} / (x+y+z)ⁿ
fn trinomial_term() -> HyperTerm {
    let zero = rat(0, 1);
    let sum_xyz = &(&MultiPoly::var("x") + &MultiPoly::var("y")) + &MultiPoly::var("z");
    HyperTerm::one()
        .mul_factorial(lin(&[("n", 1)], zero.clone()), 1)
        .unwrap()
        .mul_factorial(lin(&[("k1", 1)], zero.clone()), -1)
        .unwrap()
        .mul_factorial(lin(&[("k2", 1)], zero.clone()), -1)
        .unwrap()
        .mul_factorial(lin(&[("n", 1), ("k1", -1), ("k2", -1)], zero.clone()), -1)
        .unwrap()
        .mul_power(MultiPoly::var("x"), lin(&[("k1", 1)], zero.clone()), 1)
        .unwrap()
        .mul_power(MultiPoly::var("y"), lin(&[("k2", 1)], zero.clone()), 1)
        .unwrap()
        .mul_power(
            MultiPoly::var("z"),
            lin(&[("n", 1), ("k1", -1), ("k2", -1)], zero.clone()),
            1,
        )
        .unwrap()
        .mul_power(sum_xyz, lin(&[("n", 1)], zero), -1)
        .unwrap()
}

fn point(binds: &[(&str, i64)]) -> BTreeMap<String, Rat> {
    binds
        .iter()
        .map(|&(v, x)| (v.to_string(), rat(x, 1)))
        .collect()
}

#[test]
fn normalized_trinomial_sums_to_one_on_the_grid() {
    let f = trinomial_term();
    for (x, y, z) in [(1, 1, 1), (1, 2, 3), (2, 5, 7)] {
        for n in 0..=4i64 {
            let at = point(&[("n", n), ("x", x), ("y", y), ("z", z)]);
            let got = exact_sum_multi(&f, &at, &[("k1", 0, n), ("k2", 0, n)]).unwrap();
            assert_eq!(got, rat(1, 1), "n = {n} at ({x}, {y}, {z})");
        }
    }
}

#[test]
fn trinomial_weights_recover_the_multinomial_count() {
    // At x = y = z = 1 and n = 2 the unnormalized weights total 3² = 9,
    // so the normalized sum is exactly 1 — including the 1/9 division.
    let f = trinomial_term();
    let at = point(&[("n", 2), ("x", 1), ("y", 1), ("z", 1)]);
    let got = exact_sum_multi(&f, &at, &[("k1", 0, 2), ("k2", 0, 2)]).unwrap();
    assert_eq!(got, rat(1, 1));
}

proptest! {
    #[test]
    fn binomial_rows_always_sum_to_powers_of_two(n in 0i64..=18) {
        let f = HyperTerm::one()
            .mul_binomial(lin(&[("n", 1)], rat(0, 1)), lin(&[("k", 1)], rat(0, 1)), 1)
            .unwrap();
        let got = exact_sum_natural(&f, &point(&[("n", n)]), "k").unwrap();
        prop_assert_eq!(got, Rat::from_integer(BigInt::from(1u8) << n as u32));
    }

    #[test]
    fn descent_always_negates_the_defect(a in -500i64..=500, b in -500i64..=500) {
        let r = sqrt2_descent(a, b);
        prop_assert!(r.invariant_holds);
        prop_assert_eq!(r.defect_after, -r.defect_before);
    }

    #[test]
    fn qseries_products_are_insensitive_to_factor_order(
        exps in prop::collection::vec(1usize..=9, 1..=6),
        perm_seed in any::<u64>(),
    ) {
        let order = 15;
        let factors: Vec<QSeries> = exps
            .iter()
            .map(|&e| QSeries::one(order).sub(&QSeries::monomial(order, e, 1)))
            .collect();
        // A cheap deterministic shuffle driven by the seed.
        let mut shuffled = factors.clone();
        let mut s = perm_seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let fold = |fs: &[QSeries]| fs.iter().fold(QSeries::one(order), |acc, f| acc.mul(f));
        prop_assert_eq!(fold(&factors), fold(&shuffled));
    }

    #[test]
    fn truncation_commutes_with_multiplication(
        a in prop::collection::vec(-9i64..=9, 6),
        b in prop::collection::vec(-9i64..=9, 6),
    ) {
        // Multiply at a generous order, then compare the prefix against the
        // product done directly at the short order.
        let long = 10usize;
        let short = 5usize;
        let build = |cs: &[i64], order: usize| {
            cs.iter().enumerate().fold(QSeries::zero(order), |acc, (e, &c)| {
                acc.add(&QSeries::monomial(order, e, c))
            })
        };
        let wide = build(&a, long).mul(&build(&b, long));
        let narrow = build(&a, short).mul(&build(&b, short));
        for i in 0..=short {
            prop_assert_eq!(wide.coeff(i).unwrap(), narrow.coeff(i).unwrap());
        }
    }
}

#[test]
fn the_zero_series_annihilates_products() {
    let z = QSeries::zero(7);
    let s = QSeries::one(7).sub(&QSeries::monomial(7, 3, 2));
    assert!(z.mul(&s).coeffs().iter().all(BigInt::is_zero));
}
