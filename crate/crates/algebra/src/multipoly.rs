use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::rational::{int, Int, Rat};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The variable list is sorted by name and contains exactly the variables
/// that occur with nonzero exponent somewhere in the polynomial, so equal
/// polynomials are structurally equal.  Terms are kept in a map ordered by
/// [`Monomial`]'s graded-lex order with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    // ===== Constructors =====

    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rat::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from explicit (coefficient, exponent-per-var)
    /// pairs over the given variable list.  Intended for tests and parsers.
    pub fn from_terms(vars: &[&str], terms: &[(Rat, Vec<u32>)]) -> Self {
        let mut poly = MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        };
        for (c, exps) in terms {
            assert_eq!(exps.len(), poly.vars.len());
            if !c.is_zero() {
                let entry = poly
                    .terms
                    .entry(Monomial(exps.clone()))
                    .or_insert_with(Rat::zero);
                *entry += c;
            }
        }
        poly.normalize();
        poly
    }

    // ===== Inspection =====

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Returns the constant value if the polynomial has degree 0.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
        }
    }

    /// Leading (greatest) monomial and coefficient in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    pub fn contains_var(&self, var: &str) -> bool {
        match self.var_index(var) {
            None => false,
            Some(i) => self.terms.keys().any(|m| m.0[i] > 0),
        }
    }

    // ===== Normalization =====

    /// Drops zero coefficients and variables that no longer occur.
    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let n = self.vars.len();
        if n == 0 {
            return;
        }
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        self.vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let old = std::mem::take(&mut self.terms);
        for (m, c) in old {
            let slim = Monomial(keep.iter().map(|&i| m.0[i]).collect());
            self.terms.insert(slim, c);
        }
    }

    /// Re-expresses both polynomials over the union of their variables.
    fn aligned(&self, other: &Self) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let universe: BTreeSet<&String> =
            self.vars.iter().chain(other.vars.iter()).collect();
        let universe: Vec<String> = universe.into_iter().cloned().collect();
        (self.embed(&universe), other.embed(&universe))
    }

    /// Re-expresses the polynomial over a superset of its variables
    /// (`universe` must be sorted and contain all current variables).
    fn embed(&self, universe: &[String]) -> MultiPoly {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| universe.iter().position(|u| u == v).expect("universe must cover vars"))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; universe.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] = e;
            }
            terms.insert(Monomial(exps), c.clone());
        }
        MultiPoly { vars: universe.to_vec(), terms }
    }

    // ===== Arithmetic =====

    pub fn add_assign_poly(&mut self, other: &Self) {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            let entry = a.terms.entry(m).or_insert_with(Rat::zero);
            *entry += c;
        }
        a.normalize();
        *self = a;
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division; `None` when the divisor does not divide exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.mul_rat(&(Rat::one() / c)));
        }
        let (mut rem, div) = self.aligned(divisor);
        let universe = rem.vars.clone();
        let div = div.embed(&universe);
        let (dm, dc) = {
            let (m, c) = div.leading_term()?;
            (m.clone(), c.clone())
        };
        let mut quot = MultiPoly {
            vars: universe.clone(),
            terms: BTreeMap::new(),
        };
        while !rem.is_zero() {
            // rem may have been compressed by normalize(); re-embed.
            let rem_embedded = rem.embed(&universe);
            let (rm, rc) = {
                let (m, c) = rem_embedded.leading_term().unwrap();
                (m.clone(), c.clone())
            };
            if rm.0.len() != dm.0.len() {
                return None;
            }
            let mut qexp = Vec::with_capacity(rm.0.len());
            for (a, b) in rm.0.iter().zip(dm.0.iter()) {
                if a < b {
                    return None;
                }
                qexp.push(a - b);
            }
            let qc = rc / dc.clone();
            let mut qterm = MultiPoly {
                vars: universe.clone(),
                terms: BTreeMap::new(),
            };
            qterm.terms.insert(Monomial(qexp), qc);
            let prod = &qterm * &div;
            rem = &rem_embedded - &prod;
            quot.add_assign_poly(&qterm);
        }
        quot.normalize();
        Some(quot)
    }

    // ===== Univariate views =====

    /// Coefficients of `self` viewed as a univariate polynomial in `var`,
    /// ascending by power.  Each coefficient is a polynomial free of `var`.
    pub fn coeffs_in(&self, var: &str) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(); deg + 1];
        match self.var_index(var) {
            None => {
                out[0] = self.clone();
            }
            Some(i) => {
                for (m, c) in &self.terms {
                    let power = m.0[i] as usize;
                    let mut rest = m.0.clone();
                    rest[i] = 0;
                    let mut piece = MultiPoly {
                        vars: self.vars.clone(),
                        terms: BTreeMap::new(),
                    };
                    piece.terms.insert(Monomial(rest), c.clone());
                    piece.normalize();
                    out[power].add_assign_poly(&piece);
                }
            }
        }
        out
    }

    /// Inverse of [`coeffs_in`]: Σ coeffs\[i\]·var^i.
    pub fn from_coeffs_in(var: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let v = MultiPoly::var(var);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &v) + c;
        }
        acc
    }

    /// Substitutes a polynomial for a variable.
    pub fn subst(&self, var: &str, replacement: &MultiPoly) -> MultiPoly {
        if !self.contains_var(var) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(var);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * replacement) + c;
        }
        acc
    }

    /// Substitutes `var + delta` for `var`.
    pub fn shift_var(&self, var: &str, delta: i64) -> MultiPoly {
        if delta == 0 || !self.contains_var(var) {
            return self.clone();
        }
        let repl = &MultiPoly::var(var) + &MultiPoly::from_int(delta);
        self.subst(var, &repl)
    }

    // ===== Evaluation =====

    /// Full evaluation; every variable must be bound.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, AlgebraError> {
        for v in &self.vars {
            if !point.contains_key(v) {
                return Err(AlgebraError::UnboundVariable(v.clone()));
            }
        }
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let base = &point[&self.vars[i]];
                    let mut p = Rat::one();
                    for _ in 0..e {
                        p *= base;
                    }
                    term *= p;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes constants for a subset of the variables.
    pub fn eval_partial(&self, point: &BTreeMap<String, Rat>) -> MultiPoly {
        let mut out = self.clone();
        for (v, val) in point {
            if out.contains_var(v) {
                out = out.subst(v, &MultiPoly::constant(val.clone()));
            }
        }
        out
    }

    // ===== Integer scaling =====

    /// Writes `self = unit · primitive` with `primitive` having coprime
    /// integer coefficients and positive leading coefficient.  The zero
    /// polynomial returns `(0, 0)`.
    pub fn int_primitive(&self) -> (Rat, MultiPoly) {
        if self.is_zero() {
            return (Rat::zero(), MultiPoly::zero());
        }
        let mut num_gcd = Int::zero();
        let mut den_lcm = Int::one();
        for c in self.terms.values() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, &c.numer().abs());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut unit = Rat::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            unit = -unit;
        }
        let inv = Rat::one() / unit.clone();
        (unit, self.mul_rat(&inv))
    }

    /// Content of the polynomial viewed as univariate in `var`: the gcd of
    /// its coefficient polynomials.  Used by the gcd recursion.
    pub(crate) fn content_in(&self, var: &str) -> Result<MultiPoly, AlgebraError> {
        let coeffs = self.coeffs_in(var);
        let mut acc = MultiPoly::zero();
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            acc = if acc.is_zero() {
                let (_, p) = c.int_primitive();
                p
            } else {
                crate::gcd::poly_gcd(&acc, &c)?
            };
            if acc.is_one() {
                break;
            }
        }
        Ok(acc)
    }
}

// ===== Operator impls =====

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_poly(rhs);
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_poly(&rhs.clone().neg());
        out
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (a, b) = self.aligned(rhs);
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps: Vec<u32> =
                    ma.0.iter().zip(mb.0.iter()).map(|(x, y)| x + y).collect();
                let entry = terms.entry(Monomial(exps)).or_insert_with(Rat::zero);
                *entry += ca.clone() * cb.clone();
            }
        }
        let mut out = MultiPoly { vars: a.vars, terms };
        out.normalize();
        out
    }
}

// ===== Total order (used for canonical sorting of composite structures) =====

impl Ord for MultiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars
            .cmp(&other.vars)
            .then_with(|| {
                let a: Vec<_> = self.terms.iter().collect();
                let b: Vec<_> = other.terms.iter().collect();
                a.cmp(&b)
            })
    }
}

impl PartialOrd for MultiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// ===== Display =====

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_constant() {
                parts.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
