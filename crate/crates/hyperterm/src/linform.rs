//! Integer-linear forms `Σ cᵢ·vᵢ + b` with rational constant part.
//!
//! These are the only admissible arguments of factorials, binomials, and
//! Pochhammer lengths: integer coefficients keep shifts by 1 landing on
//! integer steps, which is what makes the rising-factorial shift rules exact.
//! The constant part is allowed to be rational so that half-integer
//! Pochhammer bases like `(3/2)_n` are representable.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use wz_algebra::{MultiPoly, Rat};

/// An integer-linear combination of variables plus a rational constant.
///
/// Stored sparsely; zero coefficients are never kept, so equality and
/// ordering are structural.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct LinForm {
    coeffs: BTreeMap<String, i64>,
    constant: Rat,
}

impl LinForm {
    /// The zero form.
    pub fn zero() -> Self {
        Self::default()
    }

    /// A bare constant.
    pub fn constant(c: Rat) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    /// An integer constant.
    pub fn int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    /// A single variable with coefficient 1.
    pub fn var(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), 1);
        Self {
            coeffs,
            constant: Rat::zero(),
        }
    }

    /// Build from explicit parts; zero coefficients are dropped.
    pub fn new(coeffs: BTreeMap<String, i64>, constant: Rat) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| *c != 0).collect();
        Self { coeffs, constant }
    }

    /// Coefficient of `name` (0 when absent).
    pub fn coeff(&self, name: &str) -> i64 {
        self.coeffs.get(name).copied().unwrap_or(0)
    }

    /// The constant part.
    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    /// Variables with nonzero coefficient, in sorted order.
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(|s| s.as_str())
    }

    /// The coefficient map itself.
    pub fn coeffs(&self) -> &BTreeMap<String, i64> {
        &self.coeffs
    }

    /// True when no variable occurs.
    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value when constant, else `None`.
    pub fn as_constant(&self) -> Option<&Rat> {
        self.is_constant().then_some(&self.constant)
    }

    /// True when the constant part is an integer.
    pub fn has_integer_constant(&self) -> bool {
        self.constant.is_integer()
    }

    /// `self` with `var ↦ var + delta` substituted.
    pub fn shift_var(&self, var: &str, delta: i64) -> Self {
        let mut out = self.clone();
        let c = out.coeff(var);
        if c != 0 {
            out.constant += Rat::from_integer((c * delta).into());
        }
        out
    }

    /// Add two forms.
    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (v, c) in &other.coeffs {
            *coeffs.entry(v.clone()).or_insert(0) += c;
        }
        Self::new(coeffs, &self.constant + &other.constant)
    }

    /// Add an integer constant.
    pub fn add_int(&self, c: i64) -> Self {
        let mut out = self.clone();
        out.constant += Rat::from_integer(c.into());
        out
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, s: i64) -> Self {
        if s == 0 {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|(v, c)| (v.clone(), c * s)).collect();
        Self {
            coeffs,
            constant: &self.constant * Rat::from_integer(s.into()),
        }
    }

    /// Negate.
    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Subtract.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Evaluate at a point; every occurring variable must be bound.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, crate::HyperError> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            let x = point
                .get(v)
                .ok_or_else(|| crate::HyperError::UnboundVariable(v.clone()))?;
            acc += x * Rat::from_integer((*c).into());
        }
        Ok(acc)
    }

    /// The same form as a polynomial (for use inside rational functions).
    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            p = &p + &MultiPoly::var(v).mul_rat(&Rat::from_integer((*c).into()));
        }
        p
    }
}

impl fmt::Display for LinForm {
    /// `2n - k + 1/2` style: variables first in sorted order, constant last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (v, c) in &self.coeffs {
            if *c == 0 {
                continue;
            }
            if wrote {
                write!(f, "{}", if *c > 0 { " + " } else { " - " })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            if a == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{a}{v}")?;
            }
            wrote = true;
        }
        if !wrote {
            return write!(f, "{}", self.constant);
        }
        if !self.constant.is_zero() {
            let c = &self.constant;
            if c.is_negative() {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wz_algebra::rat;

    fn lf(pairs: &[(&str, i64)], c: Rat) -> LinForm {
        LinForm::new(
            pairs.iter().map(|(v, k)| (v.to_string(), *k)).collect(),
            c,
        )
    }

    #[test]
    fn shift_moves_the_constant() {
        // n - k + 1 under k ↦ k+1 becomes n - k.
        let form = lf(&[("n", 1), ("k", -1)], rat(1, 1));
        let shifted = form.shift_var("k", 1);
        assert_eq!(shifted, lf(&[("n", 1), ("k", -1)], rat(0, 1)));
    }

    #[test]
    fn display_orders_variables_then_constant() {
        let form = lf(&[("n", 2), ("k", -1)], rat(1, 2));
        assert_eq!(form.to_string(), "-k + 2n + 1/2");
        assert_eq!(LinForm::int(-3).to_string(), "-3");
        assert_eq!(LinForm::zero().to_string(), "0");
    }

    #[test]
    fn eval_requires_bindings() {
        let form = lf(&[("n", 1)], rat(0, 1));
        let empty = BTreeMap::new();
        assert!(matches!(
            form.eval(&empty),
            Err(crate::HyperError::UnboundVariable(_))
        ));
        let mut point = BTreeMap::new();
        point.insert("n".to_string(), rat(7, 1));
        assert_eq!(form.eval(&point).unwrap(), rat(7, 1));
    }

    #[test]
    fn to_poly_round_trips_through_evaluation() {
        let form = lf(&[("n", 3), ("k", -2)], rat(5, 1));
        let poly = form.to_poly();
        let mut point = BTreeMap::new();
        point.insert("n".to_string(), rat(2, 1));
        point.insert("k".to_string(), rat(1, 1));
        assert_eq!(form.eval(&point).unwrap(), poly.eval(&point).unwrap());
        assert_eq!(form.eval(&point).unwrap(), rat(9, 1));
    }

    #[test]
    fn scaling_and_addition() {
        let a = lf(&[("k", 1)], rat(1, 1));
        let b = lf(&[("k", -1), ("n", 1)], rat(0, 1));
        let sum = a.add(&b);
        assert_eq!(sum, lf(&[("n", 1)], rat(1, 1)));
        assert_eq!(sum.scale(2), lf(&[("n", 2)], rat(2, 1)));
        assert!(sum.sub(&sum).is_constant());
    }
}
