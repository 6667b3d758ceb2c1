use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::gcd::poly_gcd;
use crate::multipoly::MultiPoly;
use crate::rational::Rat;

/// How a variable is rewritten by [`RatFunc::specialize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    /// `v → v + delta`.
    Shift(i64),
    /// `v → value`.
    Value(Rat),
}

/// Quotient of two [`MultiPoly`] in a canonical reduced form:
///
/// * numerator and denominator are coprime,
/// * both have integer coefficients and the pair is jointly primitive
///   (the gcd of the two integer contents is 1),
/// * the denominator's leading coefficient is positive in graded-lex order,
/// * zero is represented as `0/1`.
///
/// Because the form is canonical, `==` is a valid equality test.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Builds and normalizes `num/den`.  Errors if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() });
        }
        let g = poly_gcd(&num, &den)?;
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let (un, pn) = num.int_primitive();
        let (ud, pd) = den.int_primitive();
        let ratio = un / ud; // lowest terms, positive denominator
        let num = pn.mul_rat(&Rat::from(ratio.numer().clone()));
        let den = pd.mul_rat(&Rat::from(ratio.denom().clone()));
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self::new(p, MultiPoly::one()).expect("unit denominator")
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RatFunc::new(base.num.pow(e), base.den.pow(e)).expect("nonzero denominator"))
    }

    /// Substitutes `var + delta` for `var`.
    pub fn shift_var(&self, var: &str, delta: i64) -> Self {
        RatFunc::new(self.num.shift_var(var, delta), self.den.shift_var(var, delta))
            .expect("shift preserves nonzero denominator")
    }

    /// Substitutes a polynomial for a variable; errors if the denominator
    /// collapses to zero.
    pub fn subst(&self, var: &str, replacement: &MultiPoly) -> Result<Self, AlgebraError> {
        let den = self.den.subst(var, replacement);
        if den.is_zero() {
            return Err(AlgebraError::Pole { point: format!("{var} -> {replacement}") });
        }
        RatFunc::new(self.num.subst(var, replacement), den)
    }

    /// Applies shifts and value substitutions per variable.
    pub fn specialize(
        &self,
        bindings: &BTreeMap<String, Binding>,
    ) -> Result<Self, AlgebraError> {
        let mut out = self.clone();
        for (var, binding) in bindings {
            out = match binding {
                Binding::Shift(d) => out.shift_var(var, *d),
                Binding::Value(v) => out.subst(var, &MultiPoly::constant(v.clone()))?,
            };
        }
        Ok(out)
    }

    /// Full evaluation with pole detection.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, AlgebraError> {
        let den = self.den.eval(point)?;
        if den.is_zero() {
            let desc: Vec<String> = point.iter().map(|(v, x)| format!("{v}={x}")).collect();
            return Err(AlgebraError::Pole { point: desc.join(", ") });
        }
        Ok(self.num.eval(point)? / den)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("division by zero rational function")
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den }
    }
}

impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num.cmp(&other.num).then_with(|| self.den.cmp(&other.den))
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// True when the string is a bare monomial token (no spaces or operators
/// that would need parenthesizing).
fn simple_token(s: &str) -> bool {
    s.chars().all(|c| c.is_alphanumeric() || c == '^' || c == '_' || c == '/')
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_str = self.num.to_string();
        let num_part = if simple_token(&num_str) || num_str.strip_prefix('-').map(simple_token).unwrap_or(false) {
            num_str
        } else {
            format!("({num_str})")
        };
        // Factor the integer content out of the denominator for readability:
        // 2n - 2k + 2 prints as 2*(n - k + 1).
        let (unit, prim) = self.den.int_primitive();
        let prim_str = prim.to_string();
        let den_part = if unit.is_one() {
            if simple_token(&prim_str) {
                prim_str
            } else {
                format!("({prim_str})")
            }
        } else if prim.is_one() {
            unit.to_string()
        } else {
            format!("({unit}*({prim_str}))")
        };
        write!(f, "{num_part}/{den_part}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(s: &str) -> MultiPoly {
        MultiPoly::var(s)
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let n = v("n");
        let num = &(&n * &n) - &MultiPoly::one(); // n^2 - 1
        let den = &n - &MultiPoly::one(); // n - 1
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.num().to_string(), "n + 1");
        assert!(r.den().is_one());
    }

    #[test]
    fn zero_has_unit_denominator() {
        let n = v("n");
        let r = RatFunc::new(MultiPoly::zero(), &n + &MultiPoly::one()).unwrap();
        assert!(r.is_zero());
        assert!(r.den().is_one());
    }

    #[test]
    fn jointly_primitive_form_is_stable() {
        // (2k - n - 1) / (2(n + 1 - k)) is already canonical.
        let n = v("n");
        let k = v("k");
        let num = &(&k.mul_rat(&rat(2, 1)) - &n) - &MultiPoly::one();
        let den = (&(&n - &k) + &MultiPoly::one()).mul_rat(&rat(2, 1));
        let r = RatFunc::new(num.clone(), den.clone()).unwrap();
        assert_eq!(r.num(), &num);
        assert_eq!(r.den(), &den);
    }

    #[test]
    fn denominator_leading_coefficient_positive() {
        let n = v("n");
        let k = v("k");
        // k / (k - n): flip so the denominator leads with +n.
        let r = RatFunc::new(k.clone(), &k - &n).unwrap();
        assert_eq!(r.den().to_string(), "n - k");
        assert_eq!(r.num().to_string(), "-k");
    }

    #[test]
    fn field_arithmetic() {
        let n = v("n");
        let a = RatFunc::new(MultiPoly::one(), n.clone()).unwrap(); // 1/n
        let b = RatFunc::new(MultiPoly::one(), &n + &MultiPoly::one()).unwrap(); // 1/(n+1)
        let diff = &a - &b; // 1/(n(n+1))
        assert_eq!(diff.num().to_string(), "1");
        assert_eq!(diff.den().to_string(), "n^2 + n");
        let back = &diff * &RatFunc::from_poly(&n * &(&n + &MultiPoly::one()));
        assert!(back.is_one());
    }

    #[test]
    fn specialize_shift_and_value() {
        let n = v("n");
        let k = v("k");
        // (n + 1) / (n - k)
        let r = RatFunc::new(&n + &MultiPoly::one(), &n - &k).unwrap();
        let mut b = BTreeMap::new();
        b.insert("n".to_string(), Binding::Shift(1));
        let shifted = r.specialize(&b).unwrap();
        assert_eq!(shifted.num().to_string(), "n + 2");
        assert_eq!(shifted.den().to_string(), "n - k + 1");

        let mut b = BTreeMap::new();
        b.insert("n".to_string(), Binding::Value(rat(3, 1)));
        b.insert("k".to_string(), Binding::Value(rat(3, 1)));
        assert!(matches!(r.specialize(&b), Err(AlgebraError::Pole { .. })));
    }

    #[test]
    fn eval_with_pole_detection() {
        let n = v("n");
        let r = RatFunc::new(MultiPoly::one(), n.clone()).unwrap();
        let mut point = BTreeMap::new();
        point.insert("n".to_string(), rat(0, 1));
        assert!(matches!(r.eval(&point), Err(AlgebraError::Pole { .. })));
        point.insert("n".to_string(), rat(2, 1));
        assert_eq!(r.eval(&point).unwrap(), rat(1, 2));
    }

    #[test]
    fn display_factored_denominator() {
        let n = v("n");
        let k = v("k");
        let num = k.mul_rat(&rat(-1, 1));
        let den = (&(&n - &k) + &MultiPoly::one()).mul_rat(&rat(2, 1));
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.to_string(), "-k/(2*(n - k + 1))");
    }
}
