//! Products of hypergeometric atoms, and the operations that make them
//! useful: exact shift quotients and exact evaluation.
//!
//! A [`HyperTerm`] is `c · ∏ atomᵢ^{eᵢ}` with `c ∈ ℚ \ {0}` and canonically
//! sorted, merged atoms.  Two invariants are maintained by every builder:
//! no two atoms share a body, and no atom has exponent zero — so structural
//! equality is meaningful.
//!
//! Evaluation follows the reciprocal-factorial convention: `1/m! = 0` for
//! negative integers `m`, which is what lets `C(n,k)` vanish outside
//! `0 ≤ k ≤ n` and sums with symbolic bounds have finite support.  A
//! negative-integer factorial in a *numerator* position is a genuine pole
//! and evaluation reports it as an error rather than guessing a limit.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use wz_algebra::{MultiPoly, Rat, RatFunc};

use crate::atom::{pow_rat, AtomBody, Folded, HyperAtom};
use crate::factored::{rising_factorial, Factored};
use crate::{HyperError, LinForm};

/// A nonzero product of hypergeometric atoms with a rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperTerm {
    constant: Rat,
    atoms: Vec<HyperAtom>,
}

impl HyperTerm {
    // ===== construction =====

    /// The constant term `1`.
    pub fn one() -> Self {
        Self {
            constant: Rat::one(),
            atoms: Vec::new(),
        }
    }

    /// A bare nonzero rational constant.
    pub fn from_rat(c: Rat) -> Result<Self, HyperError> {
        if c.is_zero() {
            return Err(HyperError::IdenticallyZero);
        }
        Ok(Self {
            constant: c,
            atoms: Vec::new(),
        })
    }

    /// Multiply a validated atom (and its folded multiplier) into `self`.
    fn push_folded(&mut self, f: Folded) {
        self.constant *= f.constant;
        let Some(a) = f.atom else { return };
        match self.atoms.iter().position(|b| b.body == a.body) {
            None => {
                let idx = self
                    .atoms
                    .binary_search_by(|b| b.body.cmp(&a.body))
                    .unwrap_err();
                self.atoms.insert(idx, a);
            }
            Some(i) => {
                // Same body met twice: combine exponents and re-fold, so
                // e.g. (-1)^k · (-1)^k collapses to the constant 1.
                let old = self.atoms.remove(i);
                let merged = old.exp + a.exp;
                // Re-dispatch through the constructor for this body kind;
                // errors cannot occur because the atom already validated.
                self.push_body_unchecked(old.body, merged);
            }
        }
    }

    /// Route a body/exponent pair through the matching constructor.
    fn push_body(&mut self, body: AtomBody, exp: i64) -> Result<(), HyperError> {
        let folded = match body {
            AtomBody::Factorial(l) => HyperAtom::factorial(l, exp)?,
            AtomBody::Binomial(t, b) => HyperAtom::binomial(t, b, exp)?,
            AtomBody::Pochhammer { base, len } => HyperAtom::pochhammer(base, len, exp)?,
            AtomBody::Power { base, exp: le } => HyperAtom::power(base, le, exp)?,
            AtomBody::Sign(l) => HyperAtom::sign(l, exp)?,
            AtomBody::PolyFactor(p) => HyperAtom::poly_factor(p, exp)?,
        };
        self.push_folded(folded);
        Ok(())
    }

    fn push_body_unchecked(&mut self, body: AtomBody, exp: i64) {
        self.push_body(body, exp)
            .expect("re-merging already-validated atoms cannot fail");
    }

    // ===== fluent builders =====

    /// Multiply by a nonzero rational constant.
    pub fn mul_rat(mut self, c: Rat) -> Result<Self, HyperError> {
        if c.is_zero() {
            return Err(HyperError::IdenticallyZero);
        }
        self.constant *= c;
        Ok(self)
    }

    /// Multiply by `arg!^exp`.
    pub fn mul_factorial(mut self, arg: LinForm, exp: i64) -> Result<Self, HyperError> {
        self.push_folded(HyperAtom::factorial(arg, exp)?);
        Ok(self)
    }

    /// Multiply by `C(top, bottom)^exp`.
    pub fn mul_binomial(mut self, top: LinForm, bottom: LinForm, exp: i64) -> Result<Self, HyperError> {
        self.push_folded(HyperAtom::binomial(top, bottom, exp)?);
        Ok(self)
    }

    /// Multiply by `(base)_len^exp`.
    pub fn mul_pochhammer(mut self, base: LinForm, len: LinForm, exp: i64) -> Result<Self, HyperError> {
        self.push_folded(HyperAtom::pochhammer(base, len, exp)?);
        Ok(self)
    }

    /// Multiply by `base^(linexp·exp)`.
    pub fn mul_power(mut self, base: MultiPoly, linexp: LinForm, exp: i64) -> Result<Self, HyperError> {
        self.push_folded(HyperAtom::power(base, linexp, exp)?);
        Ok(self)
    }

    /// Multiply by `(-1)^arg`.
    pub fn mul_sign(mut self, arg: LinForm) -> Result<Self, HyperError> {
        self.push_folded(HyperAtom::sign(arg, 1)?);
        Ok(self)
    }

    /// Multiply by a polynomial factor `p^exp`; the rational content of `p`
    /// is folded into the constant.
    pub fn mul_poly(mut self, p: MultiPoly, exp: i64) -> Result<Self, HyperError> {
        if p.is_zero() {
            return Err(HyperError::IdenticallyZero);
        }
        let (unit, prim) = p.int_primitive();
        self.constant *= pow_rat(&unit, exp);
        if !prim.is_one() {
            self.push_folded(HyperAtom::poly_factor(prim, exp)?);
        }
        Ok(self)
    }

    /// Multiply two terms.
    pub fn mul_term(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant *= &other.constant;
        for a in &other.atoms {
            out.push_body_unchecked(a.body.clone(), a.exp);
        }
        out
    }

    /// Raise to an integer power (negative exponents invert).
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut out = Self {
            constant: pow_rat(&self.constant, e),
            atoms: Vec::new(),
        };
        for a in &self.atoms {
            out.push_body_unchecked(a.body.clone(), a.exp * e);
        }
        out
    }

    /// Reciprocal.
    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// `self / other`.
    pub fn div_term(&self, other: &Self) -> Self {
        self.mul_term(&other.inv())
    }

    // ===== inspection =====

    /// The rational coefficient in front.
    pub fn constant(&self) -> &Rat {
        &self.constant
    }

    /// The sorted, merged atom list.
    pub fn atoms(&self) -> &[HyperAtom] {
        &self.atoms
    }

    /// All variables mentioned, sorted and deduplicated.
    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = self.atoms.iter().flat_map(|a| a.vars()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Does any atom mention `var`?
    pub fn contains_var(&self, var: &str) -> bool {
        self.atoms.iter().any(|a| a.contains_var(var))
    }

    // ===== structural transformations =====

    /// Replace `var ↦ var + delta` everywhere, re-folding along the way
    /// (so `(-1)^(k+1)` collapses back to `-(-1)^k`).
    pub fn shift_var(&self, var: &str, delta: i64) -> Self {
        let mut out = Self {
            constant: self.constant.clone(),
            atoms: Vec::new(),
        };
        for a in &self.atoms {
            let body = match &a.body {
                AtomBody::Factorial(l) => AtomBody::Factorial(l.shift_var(var, delta)),
                AtomBody::Binomial(t, b) => {
                    AtomBody::Binomial(t.shift_var(var, delta), b.shift_var(var, delta))
                }
                AtomBody::Pochhammer { base, len } => AtomBody::Pochhammer {
                    base: base.shift_var(var, delta),
                    len: len.shift_var(var, delta),
                },
                AtomBody::Power { base, exp } => AtomBody::Power {
                    base: base.shift_var(var, delta),
                    exp: exp.shift_var(var, delta),
                },
                AtomBody::Sign(l) => AtomBody::Sign(l.shift_var(var, delta)),
                AtomBody::PolyFactor(p) => AtomBody::PolyFactor(p.shift_var(var, delta)),
            };
            out.push_body(body, a.exp)
                .expect("shifting cannot invalidate an atom");
        }
        out
    }

    /// The same term with every binomial expanded into factorials:
    /// `C(t, b) = t! / (b! (t-b)!)`.
    pub fn expanded(&self) -> Result<Self, HyperError> {
        let mut out = Self::from_rat(self.constant.clone())?;
        for a in &self.atoms {
            match &a.body {
                AtomBody::Binomial(t, b) => {
                    out.push_body(AtomBody::Factorial(t.clone()), a.exp)?;
                    out.push_body(AtomBody::Factorial(b.clone()), -a.exp)?;
                    out.push_body(AtomBody::Factorial(t.sub(b)), -a.exp)?;
                }
                other => out.push_body(other.clone(), a.exp)?,
            }
        }
        Ok(out)
    }

    // ===== shift quotients =====

    /// `t(…, var+1, …) / t(…, var, …)` as a product of explicit factors.
    ///
    /// Each atom contributes a bounded number of linear (or shifted-base)
    /// factors; the result is exact and never requires a limit.
    pub fn shift_quotient_factored(&self, var: &str) -> Result<Factored, HyperError> {
        let expanded = self.expanded()?;
        let mut out = Factored::one();
        for a in expanded.atoms() {
            out = out.mul(&atom_shift_quotient(a, var)?);
        }
        Ok(out)
    }

    /// `t(var+1)/t(var)` as a reduced rational function.
    pub fn shift_quotient(&self, var: &str) -> Result<RatFunc, HyperError> {
        Ok(self.shift_quotient_factored(var)?.expand())
    }

    // ===== exact evaluation =====

    /// Evaluate at a point with every variable bound.
    ///
    /// Returns the exact rational value; `Ok(0)` when a reciprocal factorial
    /// (or a vanishing polynomial/Pochhammer factor) kills the term, and
    /// `Err(Pole)` when a negative-integer factorial sits in a numerator
    /// position.  A pole combined with a zero in the same product is still
    /// reported as a pole — the conservative choice; the caller decides
    /// whether to step around it.
    pub fn eval_exact(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, HyperError> {
        let mut product = self.constant.clone();
        let mut saw_zero = false;
        for a in &self.atoms {
            match eval_atom(a, point)? {
                Val::Pole(what) => return Err(HyperError::Pole(what)),
                Val::Zero => saw_zero = true,
                Val::Finite(x) => product *= x,
            }
        }
        if saw_zero {
            return Ok(Rat::zero());
        }
        Ok(product)
    }
}

// ===== per-atom shift quotients =====

/// Γ(x+m)/Γ(x) as a factored product of linear factors, for polynomial `x`
/// and concrete integer `m`:
/// `m ≥ 0` gives `x(x+1)⋯(x+m-1)`, `m < 0` gives `1/((x-1)(x-2)⋯(x+m))`.
fn gamma_ratio(x: &MultiPoly, m: i64) -> Factored {
    if m >= 0 {
        rising_factorial(x, m)
    } else {
        rising_factorial(&(x + &MultiPoly::from_int(m)), -m).inv()
    }
}

fn atom_shift_quotient(atom: &HyperAtom, var: &str) -> Result<Factored, HyperError> {
    let e = atom.exp;
    Ok(match &atom.body {
        AtomBody::Factorial(l) => {
            let c = l.coeff(var);
            if c == 0 {
                return Ok(Factored::one());
            }
            // (L+c)! / L! = Γ(L+1+c)/Γ(L+1).
            let base = &l.to_poly() + &MultiPoly::one();
            gamma_ratio(&base, c).pow(e)
        }
        AtomBody::Binomial(..) => {
            unreachable!("binomials are expanded before quotients are taken")
        }
        AtomBody::Pochhammer { base, len } => {
            let cb = base.coeff(var);
            let cl = len.coeff(var);
            if cb == 0 && cl == 0 {
                return Ok(Factored::one());
            }
            // (b')_(L') / (b)_L  with  b' = b + cb, L' = L + cl
            //   = [Γ(b+L+cb+cl)/Γ(b+L)] · [Γ(b+cb)/Γ(b)]⁻¹.
            let top = base.add(len).to_poly();
            let bot = base.to_poly();
            gamma_ratio(&top, cb + cl)
                .mul(&gamma_ratio(&bot, cb).inv())
                .pow(e)
        }
        AtomBody::Power { base, exp } => {
            let c = exp.coeff(var);
            if !base.contains_var(var) {
                if c == 0 {
                    return Ok(Factored::one());
                }
                // base^(E+c)/base^E = base^c.
                let mut out = Factored::one();
                out.push(base, c * e);
                return Ok(out);
            }
            // The base moves under the shift; the exponent must then be a
            // fixed integer or the quotient is not a rational function.
            let m = match exp.as_constant() {
                Some(m) if m.is_integer() => i64::try_from(m.to_integer()).map_err(|_| {
                    HyperError::NotHypergeometric {
                        var: var.to_string(),
                        reason: "power exponent out of range".into(),
                    }
                })?,
                _ => {
                    return Err(HyperError::NotHypergeometric {
                        var: var.to_string(),
                        reason: format!(
                            "base ({base}) and exponent ({exp}) both move with the variable"
                        ),
                    })
                }
            };
            let mut out = Factored::one();
            out.push(&base.shift_var(var, 1), m * e);
            out.push(base, -m * e);
            out
        }
        AtomBody::Sign(l) => {
            let c = l.coeff(var);
            if c % 2 == 0 {
                Factored::one()
            } else {
                Factored::from_rat(-Rat::one())
            }
        }
        AtomBody::PolyFactor(p) => {
            if !p.contains_var(var) {
                return Ok(Factored::one());
            }
            let mut out = Factored::one();
            out.push(&p.shift_var(var, 1), e);
            out.push(p, -e);
            out
        }
    })
}

// ===== per-atom evaluation =====

/// Evaluation status of one atom: a nonzero value, an exact zero, or a pole
/// (with a description for the error message).
enum Val {
    Finite(Rat),
    Zero,
    Pole(String),
}

/// Raise a status to an integer power: zeros and poles trade places under
/// negative exponents.
fn raise(v: Val, e: i64) -> Val {
    match v {
        Val::Finite(x) => Val::Finite(pow_rat(&x, e)),
        Val::Zero if e < 0 => Val::Pole("reciprocal of an exact zero".into()),
        Val::Zero => Val::Zero,
        Val::Pole(w) if e < 0 => {
            let _ = w;
            Val::Zero
        }
        Val::Pole(w) => Val::Pole(w),
    }
}

fn require_int(x: &Rat, what: &str) -> Result<i64, HyperError> {
    if !x.is_integer() {
        return Err(HyperError::NonIntegerArgument(format!("{what} = {x}")));
    }
    i64::try_from(x.to_integer())
        .map_err(|_| HyperError::NonIntegerArgument(format!("{what} = {x} is out of range")))
}

/// `m!` as a status: finite for `m ≥ 0`, a pole for negative integers.
fn factorial_val(m: i64) -> Val {
    if m < 0 {
        return Val::Pole(format!("({m})!"));
    }
    let mut acc = Rat::one();
    for i in 2..=m {
        acc *= Rat::from_integer(i.into());
    }
    Val::Finite(acc)
}

fn combine(parts: Vec<Val>) -> Val {
    let mut product = Rat::one();
    let mut zero = false;
    for p in parts {
        match p {
            Val::Pole(w) => return Val::Pole(w),
            Val::Zero => zero = true,
            Val::Finite(x) => product *= x,
        }
    }
    if zero {
        Val::Zero
    } else {
        Val::Finite(product)
    }
}

fn eval_atom(atom: &HyperAtom, point: &BTreeMap<String, Rat>) -> Result<Val, HyperError> {
    let e = atom.exp;
    Ok(match &atom.body {
        AtomBody::Factorial(l) => {
            let m = require_int(&l.eval(point)?, &format!("({l})!"))?;
            raise(factorial_val(m), e)
        }
        AtomBody::Binomial(t, b) => {
            let tv = require_int(&t.eval(point)?, &format!("C({t}, {b}) top"))?;
            let bv = require_int(&b.eval(point)?, &format!("C({t}, {b}) bottom"))?;
            let inner = combine(vec![
                factorial_val(tv),
                raise(factorial_val(bv), -1),
                raise(factorial_val(tv - bv), -1),
            ]);
            raise(inner, e)
        }
        AtomBody::Pochhammer { base, len } => {
            let beta = base.eval(point)?;
            let m = require_int(&len.eval(point)?, &format!("({base})_({len}) length"))?;
            let inner = if m >= 0 {
                let mut acc = Rat::one();
                let mut zero = false;
                for i in 0..m {
                    let f = &beta + Rat::from_integer(i.into());
                    if f.is_zero() {
                        zero = true;
                        break;
                    }
                    acc *= f;
                }
                if zero {
                    Val::Zero
                } else {
                    Val::Finite(acc)
                }
            } else {
                // (b)_m = 1 / ((b-1)(b-2)⋯(b+m)) for m < 0.
                let mut acc = Rat::one();
                let mut pole = false;
                for j in 1..=(-m) {
                    let f = &beta - Rat::from_integer(j.into());
                    if f.is_zero() {
                        pole = true;
                        break;
                    }
                    acc *= f;
                }
                if pole {
                    Val::Pole(format!("({base})_({len}) with vanishing factor"))
                } else {
                    Val::Finite(Rat::one() / acc)
                }
            };
            raise(inner, e)
        }
        AtomBody::Power { base, exp } => {
            let b = base.eval(point).map_err(HyperError::Algebra)?;
            let mv = exp.eval(point)?;
            if !mv.is_integer() {
                return Err(HyperError::NonIntegerExponent(exp.to_string()));
            }
            let m = require_int(&mv, &format!("exponent {exp}"))?;
            let inner = if b.is_zero() {
                match m.cmp(&0) {
                    std::cmp::Ordering::Greater => Val::Zero,
                    std::cmp::Ordering::Equal => Val::Finite(Rat::one()),
                    std::cmp::Ordering::Less => Val::Pole(format!("0^{m}")),
                }
            } else {
                Val::Finite(pow_rat(&b, m))
            };
            raise(inner, e)
        }
        AtomBody::Sign(l) => {
            let m = require_int(&l.eval(point)?, &format!("(-1)^({l}) exponent"))?;
            let v = if m.rem_euclid(2) == 1 {
                -Rat::one()
            } else {
                Rat::one()
            };
            // Sign atoms always carry exponent 1 after normalization, but be
            // robust to raw construction anyway.
            raise(Val::Finite(v), e)
        }
        AtomBody::PolyFactor(p) => {
            let v = p.eval(point).map_err(HyperError::Algebra)?;
            let inner = if v.is_zero() { Val::Zero } else { Val::Finite(v) };
            raise(inner, e)
        }
    })
}

impl fmt::Display for HyperTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "{}", self.constant);
        }
        let mut first = true;
        if !self.constant.is_one() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for a in &self.atoms {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            write!(f, "{a}")?;
        }
        Ok(())
    }
}
