//! Rational functions kept in factored form.
//!
//! Shift quotients arrive naturally as products of linear (or low-degree)
//! polynomial factors — `(n+1) / (2·(n-k+1))` — and several downstream
//! consumers (Gosper's splitting step, denominator pools for ansatz
//! solving, closed-form reconstruction) want exactly those factors, not the
//! expanded numerator and denominator.  [`Factored`] is a unit times a
//! multiset of primitive integer polynomials with integer exponents.

use std::fmt;

use num_traits::{One, Zero};
use wz_algebra::{MultiPoly, Rat, RatFunc};

use crate::atom::pow_rat;

/// `unit · ∏ fᵢ^{eᵢ}` with each `fᵢ` primitive (integer coefficients,
/// positive leading coefficient) and pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    unit: Rat,
    factors: Vec<(MultiPoly, i64)>,
}

impl Factored {
    /// The constant `1`.
    pub fn one() -> Self {
        Self {
            unit: Rat::one(),
            factors: Vec::new(),
        }
    }

    /// A bare constant (must be nonzero).
    pub fn from_rat(c: Rat) -> Self {
        assert!(!c.is_zero(), "factored forms represent nonzero functions");
        Self {
            unit: c,
            factors: Vec::new(),
        }
    }

    /// The unit (rational constant) in front.
    pub fn unit(&self) -> &Rat {
        &self.unit
    }

    /// The factor list, sorted and merged.
    pub fn factors(&self) -> &[(MultiPoly, i64)] {
        &self.factors
    }

    /// Multiply in `p^e`, splitting off the constant so the stored base is
    /// primitive.  `p` must be nonzero.
    pub fn push(&mut self, p: &MultiPoly, e: i64) {
        assert!(!p.is_zero(), "factored forms represent nonzero functions");
        if e == 0 {
            return;
        }
        let (u, prim) = p.int_primitive();
        self.unit *= pow_rat(&u, e);
        if prim.is_one() {
            return;
        }
        match self.factors.iter_mut().find(|(q, _)| *q == prim) {
            Some((_, e0)) => *e0 += e,
            None => self.factors.push((prim, e)),
        }
        self.normalize();
    }

    /// Multiply two factored forms.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.unit *= &other.unit;
        for (p, e) in &other.factors {
            out.push(p, *e);
        }
        out
    }

    /// Raise to an integer power (negative inverts).
    pub fn pow(&self, e: i64) -> Self {
        let mut out = Self::one();
        out.unit = pow_rat(&self.unit, e);
        for (p, k) in &self.factors {
            out.push(p, k * e);
        }
        out
    }

    /// Reciprocal.
    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// Shift a variable in every factor.
    pub fn shift_var(&self, var: &str, delta: i64) -> Self {
        let mut out = Self::from_rat(self.unit.clone());
        for (p, e) in &self.factors {
            out.push(&p.shift_var(var, delta), *e);
        }
        out
    }

    /// Drop zero exponents and keep the list sorted for canonical equality.
    fn normalize(&mut self) {
        self.factors.retain(|(_, e)| *e != 0);
        self.factors.sort();
    }

    /// Expand into a reduced rational function.
    pub fn expand(&self) -> RatFunc {
        let mut num = MultiPoly::constant(self.unit.clone());
        let mut den = MultiPoly::one();
        for (p, e) in &self.factors {
            let target = if *e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *target = &*target * p;
            }
        }
        RatFunc::new(num, den).expect("factored denominators are nonzero by construction")
    }

    /// The factors with positive exponent, expanded to a polynomial.
    pub fn numerator_poly(&self) -> MultiPoly {
        let mut num = MultiPoly::constant(self.unit.numer().clone().into());
        for (p, e) in &self.factors {
            if *e > 0 {
                for _ in 0..*e {
                    num = &num * p;
                }
            }
        }
        num
    }

    /// The factors with negative exponent, expanded to a polynomial
    /// (together with the unit's denominator).
    pub fn denominator_poly(&self) -> MultiPoly {
        let mut den = MultiPoly::constant(self.unit.denom().clone().into());
        for (p, e) in &self.factors {
            if *e < 0 {
                for _ in 0..e.unsigned_abs() {
                    den = &den * p;
                }
            }
        }
        den
    }
}

/// `b (b+1) ⋯ (b+n-1)` as a factored product, for symbolic `b` given as a
/// polynomial and a concrete length `n ≥ 0`.  The workhorse behind every
/// shift-quotient rule: shifting a length-`L` product by one appends or
/// removes a bounded number of linear factors, and this function builds them.
pub fn rising_factorial(base: &MultiPoly, n: i64) -> Factored {
    assert!(n >= 0, "rising factorial needs a non-negative length");
    let mut out = Factored::one();
    for i in 0..n {
        out.push(&(base + &MultiPoly::from_int(i)), 1);
    }
    out
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.unit);
        }
        let mut first = true;
        if !self.unit.is_one() {
            write!(f, "{}", self.unit)?;
            first = false;
        }
        for (p, e) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})^{e}")?;
            }
        }
        Ok(())
    }
}
