//! Natural-support analysis: symbolic bounds outside which a term vanishes.
//!
//! Two atom shapes force exact zeros in the tails:
//!
//! * a reciprocal factorial `1/L!` vanishes once `L` goes negative, giving
//!   an unconditional bound on any variable appearing in `L` with
//!   coefficient `±1`;
//! * a Pochhammer factor `(b)_L` (positive exponent) vanishes once the
//!   product runs over `0`, i.e. when `L ≥ 1 - b` — a bound that is only
//!   valid where `b` is a non-positive integer, so it is recorded with the
//!   condition attached.
//!
//! Bounds are collected per variable; [`SupportBounds::resolve`] turns them
//! into a concrete `[lo, hi]` window at a point (checking each condition),
//! and [`SupportBounds::tightest`] picks a display-friendly symbolic pair.

use std::collections::BTreeMap;

use num_traits::Signed;
use wz_algebra::Rat;

use crate::atom::AtomBody;
use crate::{HyperError, HyperTerm, LinForm};

/// Why a bound holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundKind {
    /// Holds at every integer point.
    Unconditional,
    /// Holds wherever the recorded linear form evaluates to a non-positive
    /// integer (the Pochhammer-base condition).
    RequiresNonPositive(LinForm),
}

/// `var ≥ at` (lower) or `var ≤ at` (upper), outside of which the term is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub at: LinForm,
    pub kind: BoundKind,
}

impl Bound {
    fn unconditional(at: LinForm) -> Self {
        Self {
            at,
            kind: BoundKind::Unconditional,
        }
    }

    /// Whether the bound applies at a concrete point, and if so where.
    fn applies_at(&self, point: &BTreeMap<String, Rat>) -> Result<Option<Rat>, HyperError> {
        match &self.kind {
            BoundKind::Unconditional => Ok(Some(self.at.eval(point)?)),
            BoundKind::RequiresNonPositive(b) => {
                let v = b.eval(point)?;
                if v.is_integer() && !v.is_positive() {
                    Ok(Some(self.at.eval(point)?))
                } else {
                    Ok(None)
                }
            }
        }
    }
}

/// All support bounds found for one variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupportBounds {
    pub lowers: Vec<Bound>,
    pub uppers: Vec<Bound>,
}

impl SupportBounds {
    /// True when both sides have at least one bound, so natural-support
    /// summation over this variable terminates.
    pub fn is_bounded(&self) -> bool {
        !self.lowers.is_empty() && !self.uppers.is_empty()
    }

    /// Concrete `[lo, hi]` at a point binding every other variable.
    ///
    /// The lower edge is the max of the applicable lower bounds and the
    /// upper edge the min of the applicable upper bounds, rounded inward to
    /// integers.  `Ok(None)` when either side has no applicable bound.
    pub fn resolve(
        &self,
        point: &BTreeMap<String, Rat>,
    ) -> Result<Option<(i64, i64)>, HyperError> {
        let mut lo: Option<Rat> = None;
        for b in &self.lowers {
            if let Some(v) = b.applies_at(point)? {
                lo = Some(match lo {
                    Some(cur) if cur >= v => cur,
                    _ => v,
                });
            }
        }
        let mut hi: Option<Rat> = None;
        for b in &self.uppers {
            if let Some(v) = b.applies_at(point)? {
                hi = Some(match hi {
                    Some(cur) if cur <= v => cur,
                    _ => v,
                });
            }
        }
        match (lo, hi) {
            (Some(lo), Some(hi)) => Ok(Some((ceil_int(&lo)?, floor_int(&hi)?))),
            _ => Ok(None),
        }
    }

    /// A display-friendly `(lower, upper)` pair: unconditional bounds are
    /// preferred; among bounds sharing variable parts the tighter constant
    /// wins; otherwise the first found is reported.
    pub fn tightest(&self) -> (Option<Bound>, Option<Bound>) {
        (pick(&self.lowers, true), pick(&self.uppers, false))
    }
}

fn ceil_int(x: &Rat) -> Result<i64, HyperError> {
    i64::try_from(x.ceil().to_integer())
        .map_err(|_| HyperError::NonIntegerArgument(format!("bound {x} out of range")))
}

fn floor_int(x: &Rat) -> Result<i64, HyperError> {
    i64::try_from(x.floor().to_integer())
        .map_err(|_| HyperError::NonIntegerArgument(format!("bound {x} out of range")))
}

fn pick(bounds: &[Bound], want_max: bool) -> Option<Bound> {
    let mut best: Option<&Bound> = None;
    for b in bounds {
        let Some(cur) = best else {
            best = Some(b);
            continue;
        };
        let b_uncond = b.kind == BoundKind::Unconditional;
        let cur_uncond = cur.kind == BoundKind::Unconditional;
        if b_uncond && !cur_uncond {
            best = Some(b);
            continue;
        }
        if !b_uncond && cur_uncond {
            continue;
        }
        // Comparable only when the variable parts agree.
        if b.at.coeffs() == cur.at.coeffs() {
            let tighter = if want_max {
                b.at.constant_part() > cur.at.constant_part()
            } else {
                b.at.constant_part() < cur.at.constant_part()
            };
            if tighter {
                best = Some(b);
            }
        }
    }
    best.cloned()
}

impl HyperTerm {
    /// Symbolic bounds on `var` outside which the term is exactly zero.
    ///
    /// The result is conservative: a term may vanish well inside the window
    /// (or everywhere, for an empty window), but never outside it.
    pub fn natural_support(&self, var: &str) -> Result<SupportBounds, HyperError> {
        let expanded = self.expanded()?;
        let mut out = SupportBounds::default();
        for atom in expanded.atoms() {
            match &atom.body {
                AtomBody::Factorial(l) if atom.exp < 0 => {
                    // 1/L! = 0 once L ≤ -1.
                    match l.coeff(var) {
                        1 => {
                            // L = var + M: zero for var ≤ -M - 1.
                            let m = l.sub(&LinForm::var(var));
                            out.lowers.push(Bound::unconditional(m.neg()));
                        }
                        -1 => {
                            // L = -var + M: zero for var ≥ M + 1.
                            let m = l.add(&LinForm::var(var));
                            out.uppers.push(Bound::unconditional(m));
                        }
                        _ => {}
                    }
                }
                AtomBody::Pochhammer { base, len } if atom.exp > 0 => {
                    // (b)_L = 0 once L ≥ 1 - b, provided b is a non-positive
                    // integer; only the length may move with `var` here.
                    if base.coeff(var) != 0 || !base.has_integer_constant() {
                        continue;
                    }
                    if let Some(c) = base.as_constant() {
                        if c.is_positive() {
                            continue;
                        }
                    }
                    let kind = if base.as_constant().is_some() {
                        BoundKind::Unconditional
                    } else {
                        BoundKind::RequiresNonPositive(base.clone())
                    };
                    match len.coeff(var) {
                        1 => {
                            // L = var + M: zero for var ≥ 1 - b - M.
                            let m = len.sub(&LinForm::var(var));
                            let at = base.neg().sub(&m);
                            out.uppers.push(Bound { at, kind });
                        }
                        -1 => {
                            // L = -var + M: zero for var ≤ M + b - 1.
                            let m = len.add(&LinForm::var(var));
                            let at = m.add(base);
                            out.lowers.push(Bound { at, kind });
                        }
                        _ => {}
                    }
                }
                _ => {}
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wz_algebra::rat;

    fn n() -> LinForm {
        LinForm::var("n")
    }
    fn k() -> LinForm {
        LinForm::var("k")
    }

    fn point(pairs: &[(&str, i64)]) -> BTreeMap<String, Rat> {
        pairs
            .iter()
            .map(|(v, x)| (v.to_string(), rat(*x, 1)))
            .collect()
    }

    #[test]
    fn binomial_support_is_zero_to_n() {
        let t = HyperTerm::one().mul_binomial(n(), k(), 1).unwrap();
        let s = t.natural_support("k").unwrap();
        let (lo, hi) = s.tightest();
        assert_eq!(lo.unwrap().at, LinForm::int(0));
        assert_eq!(hi.unwrap().at, n());
        assert_eq!(s.resolve(&point(&[("n", 5)])).unwrap(), Some((0, 5)));
    }

    #[test]
    fn shifted_reciprocal_factorial_extends_the_window() {
        // k / (n - k + 1)!  is supported up to k = n + 1.
        let t = HyperTerm::one()
            .mul_factorial(n().sub(&k()).add_int(1), -1)
            .unwrap()
            .mul_factorial(k(), -1)
            .unwrap();
        let s = t.natural_support("k").unwrap();
        let (lo, hi) = s.tightest();
        assert_eq!(lo.unwrap().at, LinForm::int(0));
        assert_eq!(hi.unwrap().at, n().add_int(1));
    }

    #[test]
    fn falling_pochhammer_gives_a_conditional_upper_bound() {
        // (-n)_k vanishes for k > n — wherever -n is a non-positive integer.
        let t = HyperTerm::one().mul_pochhammer(n().neg(), k(), 1).unwrap();
        let s = t.natural_support("k").unwrap();
        assert!(s.lowers.is_empty());
        let up = &s.uppers[0];
        assert_eq!(up.at, n());
        assert_eq!(up.kind, BoundKind::RequiresNonPositive(n().neg()));
        // At n = 3 the condition holds and the bound engages…
        let t_full = t.mul_factorial(k(), -1).unwrap();
        let s_full = t_full.natural_support("k").unwrap();
        assert_eq!(s_full.resolve(&point(&[("n", 3)])).unwrap(), Some((0, 3)));
    }

    #[test]
    fn geometric_terms_have_no_support_window() {
        let t = HyperTerm::one()
            .mul_power(wz_algebra::MultiPoly::constant(rat(2, 1)), k(), 1)
            .unwrap();
        let s = t.natural_support("k").unwrap();
        assert!(!s.is_bounded());
        assert_eq!(s.resolve(&point(&[])).unwrap(), None);
    }

    #[test]
    fn positive_base_pochhammer_never_bounds() {
        let t = HyperTerm::one()
            .mul_pochhammer(LinForm::constant(rat(3, 2)), k(), 1)
            .unwrap();
        let s = t.natural_support("k").unwrap();
        assert!(s.uppers.is_empty());
    }

    #[test]
    fn resolution_takes_the_tightest_window() {
        // 1/(k! (n-k)! (n-k-2)!): the third factor cuts the top to n-2.
        let t = HyperTerm::one()
            .mul_factorial(k(), -1)
            .unwrap()
            .mul_factorial(n().sub(&k()), -1)
            .unwrap()
            .mul_factorial(n().sub(&k()).add_int(-2), -1)
            .unwrap();
        let s = t.natural_support("k").unwrap();
        assert_eq!(s.uppers.len(), 2);
        assert_eq!(s.resolve(&point(&[("n", 6)])).unwrap(), Some((0, 4)));
        let (_, hi) = s.tightest();
        assert_eq!(hi.unwrap().at, n().add_int(-2));
    }
}
