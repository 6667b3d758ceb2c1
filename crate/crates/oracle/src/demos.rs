//! Two warm-up arguments, mechanized.
//!
//! The √2 descent: if `A² = 2B²` had a positive integer solution, the map
//! `(A, B) ↦ (2B−A, A−B)` would produce a strictly smaller one forever,
//! which is impossible — so √2 is irrational.  The engine of that proof is
//! a one-line polynomial identity, checked here both symbolically and on
//! concrete pairs.
//!
//! The parable: `(x₁+⋯+xₙ)² = Σxᵢ² + 2Σ_{i<j}xᵢxⱼ`, proved once by
//! induction on `n` and re-checkable for any fixed `n` by brute expansion.
//! A canonical-form polynomial equality *is* the brute expansion, so the
//! check is a single comparison.

use wz_algebra::MultiPoly;

/// One step of the descent with the before/after bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentReport {
    /// The descended pair `(2B−A, A−B)`.
    pub descended: (i64, i64),
    /// `A² − 2B²` before the step.
    pub defect_before: i64,
    /// `a² − 2b²` after the step.
    pub defect_after: i64,
    /// Whether the defect flipped sign exactly: `a² − 2b² = −(A² − 2B²)`.
    pub invariant_holds: bool,
}

/// Applies `(A, B) ↦ (2B−A, A−B)` and reports the defect on both sides.
///
/// For pairs with `A² − 2B² = ±1` (convergents of √2) the step lands on
/// the previous convergent with the defect negated; iterating from any
/// such pair walks down to `(1, 1)`.
pub fn sqrt2_descent(big_a: i64, big_b: i64) -> DescentReport {
    let (a, b) = (2 * big_b - big_a, big_a - big_b);
    let before = big_a * big_a - 2 * big_b * big_b;
    let after = a * a - 2 * b * b;
    DescentReport {
        descended: (a, b),
        defect_before: before,
        defect_after: after,
        invariant_holds: after == -before,
    }
}

/// Checks the sign-flip identity `(2B−A)² − 2(A−B)² = −(A² − 2B²)` as a
/// polynomial identity in symbolic `A`, `B` — one canonical-form
/// comparison settles it for all integers at once.
pub fn descent_identity_holds() -> bool {
    let a = MultiPoly::var("A");
    let b = MultiPoly::var("B");
    let two = MultiPoly::from_int(2);
    let desc_a = &(&two * &b) - &a;
    let desc_b = &a - &b;
    let lhs = &desc_a.pow(2) - &(&two * &desc_b.pow(2));
    let rhs = -(&a.pow(2) - &(&two * &b.pow(2)));
    lhs == rhs
}

/// Expands `(x₁+⋯+xₙ)²` and compares it with `Σxᵢ² + 2Σ_{i<j}xᵢxⱼ`, then
/// re-checks the induction step
/// `e₁(n)² = e₁(n−1)² + 2·e₁(n−1)·xₙ + xₙ²` that proves the general case.
pub fn parable_check(n: usize) -> bool {
    let xs: Vec<MultiPoly> = (1..=n)
        .map(|i| MultiPoly::var(&format!("x{i}")))
        .collect();
    let sum_all = |vars: &[MultiPoly]| {
        vars.iter()
            .fold(MultiPoly::from_int(0), |acc, x| &acc + x)
    };

    let e1 = sum_all(&xs);
    let power_sum = xs
        .iter()
        .fold(MultiPoly::from_int(0), |acc, x| &acc + &x.pow(2));
    let mut pair_sum = MultiPoly::from_int(0);
    for i in 0..n {
        for j in i + 1..n {
            pair_sum = &pair_sum + &(&xs[i] * &xs[j]);
        }
    }
    let two = MultiPoly::from_int(2);
    let direct = e1.pow(2) == &power_sum + &(&two * &pair_sum);

    let induction = if n == 0 {
        true
    } else {
        let prev = sum_all(&xs[..n - 1]);
        let xn = &xs[n - 1];
        let step = &(&prev.pow(2) + &(&(&two * &prev) * xn)) + &xn.pow(2);
        e1.pow(2) == step
    };

    direct && induction
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_sign_flip_identity_is_a_polynomial_fact() {
        assert!(descent_identity_holds());
    }

    #[test]
    fn the_descent_steps_down_the_convergents() {
        // 7/5 → 3/2 → 1/1, defects alternating −1, 1, −1.
        let r = sqrt2_descent(7, 5);
        assert_eq!(r.descended, (3, 2));
        assert_eq!((r.defect_before, r.defect_after), (-1, 1));
        assert!(r.invariant_holds);

        let r = sqrt2_descent(3, 2);
        assert_eq!(r.descended, (1, 1));
        assert_eq!((r.defect_before, r.defect_after), (1, -1));
        assert!(r.invariant_holds);
    }

    #[test]
    fn a_true_square_root_pair_would_descend_forever() {
        // If A² − 2B² were 0, the defect stays 0 while the pair shrinks:
        // 0 < a < A whenever B < A < 2B, which A² = 2B² forces.
        let r = sqrt2_descent(10, 7);
        assert!(r.invariant_holds);
        assert!(r.descended.0.abs() < 10);
    }

    #[test]
    fn squared_sums_expand_as_squares_plus_cross_terms() {
        for n in 0..=8 {
            assert!(parable_check(n), "fails at n = {n}");
        }
    }
}
