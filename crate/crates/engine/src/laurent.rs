//! Exact Laurent-polynomial expansion and constant-term extraction.
//!
//! The target object is the product
//!
//! ```text
//! ∏_{1 ≤ i ≠ j ≤ r} (1 − z_i/z_j)^a,
//! ```
//!
//! whose constant term — the coefficient of `z_1^0 ⋯ z_r^0` — equals
//! `(ra)!/(a!)^r`.  Expansion is brute-force exact arithmetic: every
//! binomial factor is multiplied in, one at a time, over integer exponent
//! vectors.  Each `z_i` appears with exponent in `[−(r−1)a, (r−1)a]`, so
//! the support lives in a fixed box and the total work is predictable; an
//! operation estimate is checked against a budget *before* the first
//! multiplication so oversize requests fail fast instead of stalling.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use wz_algebra::Rat;

use crate::error::EngineError;

/// Default expansion budget, in estimated coefficient operations.  Sized
/// so the largest intended desk computation fits with room to spare while
/// runaway requests (large `r·a`) are rejected up front.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// A Laurent polynomial: finitely many integer exponent vectors, each with
/// a nonzero rational coefficient.  Zero coefficients are never stored, so
/// structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    /// The zero polynomial in the given variables.
    pub fn new(vars: Vec<String>) -> Self {
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one(vars: Vec<String>) -> Self {
        let width = vars.len();
        let mut out = LaurentPoly::new(vars);
        out.terms.insert(vec![0; width], Rat::one());
        out
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exponents: &[i64]) -> Rat {
        self.terms.get(exponents).cloned().unwrap_or_else(Rat::zero)
    }

    /// The coefficient of `z_1^0 ⋯ z_r^0`.
    pub fn constant_coeff(&self) -> Rat {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Adds `c·z^exponents`, dropping the entry if the sum cancels.
    pub fn add_term(&mut self, exponents: Vec<i64>, c: Rat) {
        assert_eq!(exponents.len(), self.vars.len(), "exponent arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.vars, other.vars, "variable lists must agree");
        let mut out = LaurentPoly::new(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exponents: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exponents, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Terms in exponent-vector order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }
}

/// Pre-expansion work estimate: the exponent box has `(2a+1)` lattice
/// points per coordinate direction contributed by each variable pairing,
/// and there are `r²` ordered pairings to absorb.
fn budget_check(r: usize, a: u32, budget: u128) -> Result<(), EngineError> {
    let base = 2 * u128::from(a) + 1;
    let required = base
        .checked_pow(r as u32)
        .unwrap_or(u128::MAX)
        .saturating_mul((r * r) as u128);
    if required > budget {
        return Err(EngineError::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Expands `∏_{1 ≤ i ≠ j ≤ r} (1 − z_i/z_j)^a` exactly.
///
/// Variables are named `z1..zr`.  For `r = 1` the product is empty and the
/// result is the constant 1.  Fails with a budget error — naming both the
/// estimate and the limit — before any work is done if the expansion is
/// too large.
pub fn dyson_product(r: usize, a: u32, budget: u128) -> Result<LaurentPoly, EngineError> {
    budget_check(r, a, budget)?;
    let vars: Vec<String> = (1..=r).map(|i| format!("z{i}")).collect();
    let width = vars.len();
    let mut product = LaurentPoly::one(vars.clone());
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let mut factor = LaurentPoly::one(vars.clone());
            let mut exponents = vec![0i64; width];
            exponents[i] = 1;
            exponents[j] = -1;
            factor.add_term(exponents, -Rat::one());
            for _ in 0..a {
                product = product.mul(&factor);
            }
        }
    }
    Ok(product)
}

/// The constant term of `∏_{1 ≤ i ≠ j ≤ r} (1 − z_i/z_j)^a`, by full
/// expansion; equals `(ra)!/(a!)^r`.
pub fn constant_term(r: usize, a: u32, budget: u128) -> Result<Rat, EngineError> {
    Ok(dyson_product(r, a, budget)?.constant_coeff())
}

#[cfg(test)]
mod tests {
    use super::*;
    use wz_algebra::rat;

    fn ct(r: usize, a: u32) -> Rat {
        constant_term(r, a, DEFAULT_BUDGET).unwrap()
    }

    /// `(ra)!/(a!)^r` computed independently.
    fn closed_form(r: u64, a: u64) -> Rat {
        let fact = |m: u64| -> Rat {
            let mut out = Rat::one();
            for v in 1..=m {
                out *= Rat::from_integer(v.into());
            }
            out
        };
        let mut den = Rat::one();
        for _ in 0..r {
            den *= fact(a);
        }
        fact(r * a) / den
    }

    #[test]
    fn two_variable_expansion_is_exact() {
        // (1 − z1/z2)(1 − z2/z1) = 2 − z1/z2 − z2/z1.
        let p = dyson_product(2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff(&[0, 0]), rat(2, 1));
        assert_eq!(p.coeff(&[1, -1]), rat(-1, 1));
        assert_eq!(p.coeff(&[-1, 1]), rat(-1, 1));
    }

    #[test]
    fn empty_product_has_constant_term_one() {
        assert_eq!(ct(1, 0), Rat::one());
        assert_eq!(ct(1, 7), Rat::one());
    }

    #[test]
    fn zeroth_power_is_one_for_any_width() {
        for r in 1..=3 {
            assert_eq!(ct(r, 0), Rat::one());
        }
    }

    #[test]
    fn constant_terms_match_the_factorial_quotient() {
        for r in 1..=3u64 {
            for a in 0..=2u64 {
                assert_eq!(
                    ct(r as usize, a as u32),
                    closed_form(r, a),
                    "r = {r}, a = {a}"
                );
            }
        }
    }

    #[test]
    fn expansion_is_symmetric_under_variable_exchange() {
        // The product is invariant under permuting z_1..z_r, so the
        // coefficient map must be too.
        let p = dyson_product(3, 2, DEFAULT_BUDGET).unwrap();
        for (e, c) in p.iter_terms() {
            let rotated = vec![e[2], e[0], e[1]];
            let swapped = vec![e[1], e[0], e[2]];
            assert_eq!(&p.coeff(&rotated), c);
            assert_eq!(&p.coeff(&swapped), c);
        }
    }

    #[test]
    fn exponents_stay_inside_the_predicted_box() {
        let p = dyson_product(3, 2, DEFAULT_BUDGET).unwrap();
        for (e, _) in p.iter_terms() {
            assert!(e.iter().all(|x| x.abs() <= 4), "exponent outside box: {e:?}");
            assert_eq!(e.iter().sum::<i64>(), 0, "every monomial has degree 0");
        }
    }

    #[test]
    fn oversize_requests_fail_before_expanding() {
        match constant_term(3, 2, 10) {
            Err(EngineError::BudgetExceeded { required, budget }) => {
                assert_eq!(required, 1125); // (2·2+1)³ · 3²
                assert_eq!(budget, 10);
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn cancellation_removes_stored_terms() {
        let mut p = LaurentPoly::new(vec!["z1".into()]);
        p.add_term(vec![2], rat(5, 3));
        p.add_term(vec![2], rat(-5, 3));
        assert!(p.is_zero());
        assert_eq!(p.coeff(&[2]), Rat::zero());
    }
}
