//! Atomic factors of a hypergeometric term.
//!
//! An atom is one of
//!
//! * `L!` — factorial of a linear form,
//! * `C(T, B)` — binomial coefficient (kept structurally, expanded into
//!   factorials whenever shift quotients or supports are computed),
//! * `(b)_L` — Pochhammer symbol / rising factorial `b(b+1)⋯(b+L-1)`,
//! * `P^L` — a polynomial base raised to a linear-form exponent,
//! * `(-1)^L` — a sign factor, and
//! * `P` — a bare polynomial factor (multiplicity carried by the exponent),
//!
//! raised to an integer power `exp`.  Construction folds what it can into
//! constants and rejects shapes the engine cannot shift exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use wz_algebra::{MultiPoly, Rat};

use crate::{HyperError, LinForm};

/// The kind-specific payload of an atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum AtomBody {
    /// `L!` with `L` an integer-linear form (integer constant part required).
    Factorial(LinForm),
    /// `C(top, bottom)`; both arguments integer-linear with integer constants.
    Binomial(LinForm, LinForm),
    /// `(base)_len = base·(base+1)⋯(base+len-1)`; `len` must have an integer
    /// constant part, `base` may be any rational-constant linear form.
    Pochhammer { base: LinForm, len: LinForm },
    /// `base^exp` with polynomial base and linear-form exponent.
    Power { base: MultiPoly, exp: LinForm },
    /// `(-1)^L`.
    Sign(LinForm),
    /// A polynomial factor; multiplicity lives in the atom exponent.
    PolyFactor(MultiPoly),
}

/// One factor `body^exp` of a term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HyperAtom {
    pub body: AtomBody,
    pub exp: i64,
}

/// What an atom construction folded down to: a rational multiplier and at
/// most one surviving atom.
///
/// Concrete arguments fold completely into the multiplier (e.g. `3!` → 6),
/// and partially-constant shapes split — `(-1)^(k+1)` becomes multiplier
/// `-1` with surviving atom `(-1)^k` — so the term builder can keep its
/// atom list canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Folded {
    pub constant: Rat,
    pub atom: Option<HyperAtom>,
}

impl Folded {
    fn constant(c: Rat) -> Self {
        Self { constant: c, atom: None }
    }

    fn atom(a: HyperAtom) -> Self {
        Self {
            constant: Rat::one(),
            atom: Some(a),
        }
    }

    fn scaled(c: Rat, a: HyperAtom) -> Self {
        Self {
            constant: c,
            atom: Some(a),
        }
    }
}

/// `m!` for a concrete non-negative integer.
fn int_factorial(m: i64) -> Rat {
    let mut acc = Rat::one();
    for i in 2..=m {
        acc *= Rat::from_integer(i.into());
    }
    acc
}

impl HyperAtom {
    /// `L!^exp`.  Requires an integer constant part; folds constant arguments
    /// (negative constant factorials are rejected rather than silently zero —
    /// a *term* is a product of nonzero factors, and `1/(-1)!` belongs in
    /// evaluation, not construction).
    pub fn factorial(arg: LinForm, exp: i64) -> Result<Folded, HyperError> {
        if !arg.has_integer_constant() {
            return Err(HyperError::InvalidAtom(format!(
                "factorial argument `{arg}` must have an integer constant part"
            )));
        }
        if exp == 0 {
            return Ok(Folded::constant(Rat::one()));
        }
        if let Some(c) = arg.as_constant() {
            let m = c.to_integer();
            let m: i64 = i64::try_from(m.clone()).map_err(|_| {
                HyperError::InvalidAtom(format!("factorial argument {m} is out of range"))
            })?;
            if m < 0 {
                return Err(HyperError::InvalidAtom(format!(
                    "constant factorial ({m})! is undefined in a term; \
                     negative arguments only make sense during evaluation"
                )));
            }
            let val = int_factorial(m);
            return Ok(Folded::constant(pow_rat(&val, exp)));
        }
        Ok(Folded::atom(HyperAtom {
            body: AtomBody::Factorial(arg),
            exp,
        }))
    }

    /// `C(top, bottom)^exp`.
    pub fn binomial(top: LinForm, bottom: LinForm, exp: i64) -> Result<Folded, HyperError> {
        if !top.has_integer_constant() || !bottom.has_integer_constant() {
            return Err(HyperError::InvalidAtom(format!(
                "binomial C({top}, {bottom}) needs integer constant parts"
            )));
        }
        if exp == 0 {
            return Ok(Folded::constant(Rat::one()));
        }
        if let (Some(t), Some(b)) = (top.as_constant(), bottom.as_constant()) {
            let t = i64::try_from(t.to_integer()).map_err(|_| {
                HyperError::InvalidAtom("binomial argument out of range".into())
            })?;
            let b = i64::try_from(b.to_integer()).map_err(|_| {
                HyperError::InvalidAtom("binomial argument out of range".into())
            })?;
            if b < 0 || b > t || t < 0 {
                return Err(HyperError::InvalidAtom(format!(
                    "constant binomial C({t}, {b}) is zero or undefined"
                )));
            }
            let val = &int_factorial(t) / &(int_factorial(b) * int_factorial(t - b));
            return Ok(Folded::constant(pow_rat(&val, exp)));
        }
        Ok(Folded::atom(HyperAtom {
            body: AtomBody::Binomial(top, bottom),
            exp,
        }))
    }

    /// `(base)_len^exp`.
    pub fn pochhammer(base: LinForm, len: LinForm, exp: i64) -> Result<Folded, HyperError> {
        if !len.has_integer_constant() {
            return Err(HyperError::InvalidAtom(format!(
                "Pochhammer length `{len}` must have an integer constant part"
            )));
        }
        if exp == 0 {
            return Ok(Folded::constant(Rat::one()));
        }
        if let Some(l) = len.as_constant() {
            let l = i64::try_from(l.to_integer()).map_err(|_| {
                HyperError::InvalidAtom("Pochhammer length out of range".into())
            })?;
            if l < 0 {
                return Err(HyperError::InvalidAtom(format!(
                    "Pochhammer symbol with negative constant length {l}"
                )));
            }
            if let Some(b) = base.as_constant() {
                // Fully constant: (b)_l = b(b+1)⋯(b+l-1).
                let mut acc = Rat::one();
                for i in 0..l {
                    acc *= b + Rat::from_integer(i.into());
                }
                if acc.is_zero() {
                    return Err(HyperError::IdenticallyZero);
                }
                return Ok(Folded::constant(pow_rat(&acc, exp)));
            }
            if l == 0 {
                return Ok(Folded::constant(Rat::one()));
            }
        }
        Ok(Folded::atom(HyperAtom {
            body: AtomBody::Pochhammer { base, len },
            exp,
        }))
    }

    /// `base^(linexp · exp)` for a polynomial base.
    pub fn power(base: MultiPoly, linexp: LinForm, exp: i64) -> Result<Folded, HyperError> {
        if base.is_zero() {
            return Err(HyperError::IdenticallyZero);
        }
        if exp == 0 || linexp == LinForm::zero() {
            return Ok(Folded::constant(Rat::one()));
        }
        if base.is_one() {
            return Ok(Folded::constant(Rat::one()));
        }
        if let (Some(b), Some(e)) = (base.as_constant(), linexp.as_constant()) {
            if e.is_integer() {
                let e = i64::try_from(e.to_integer())
                    .map_err(|_| HyperError::InvalidAtom("power exponent out of range".into()))?;
                return Ok(Folded::constant(pow_rat(&pow_rat(&b, e), exp)));
            }
            return Err(HyperError::NonIntegerExponent(linexp.to_string()));
        }
        Ok(Folded::atom(HyperAtom {
            body: AtomBody::Power {
                base,
                exp: linexp,
            },
            exp,
        }))
    }

    /// `(-1)^(L · exp)`.
    pub fn sign(arg: LinForm, exp: i64) -> Result<Folded, HyperError> {
        if !arg.has_integer_constant() {
            return Err(HyperError::InvalidAtom(format!(
                "sign exponent `{arg}` must have an integer constant part"
            )));
        }
        // (-1)^(L·exp): only the parity of the total exponent matters, so
        // normalize the atom exponent to 1 and fold parity into the form.
        let total = arg.scale(exp);
        if let Some(c) = total.as_constant() {
            let c = c.to_integer();
            let odd = c.magnitude().bit(0);
            return Ok(Folded::constant(if odd { -Rat::one() } else { Rat::one() }));
        }
        // Reduce every coefficient mod 2 and pull the constant's parity out
        // front: (-1)^(L + c) = (-1)^c · (-1)^L.
        let coeffs: BTreeMap<String, i64> = total
            .coeffs()
            .iter()
            .map(|(v, c)| (v.clone(), c.rem_euclid(2)))
            .collect();
        let konst_odd = total.constant_part().to_integer().magnitude().bit(0);
        let multiplier = if konst_odd { -Rat::one() } else { Rat::one() };
        let reduced = LinForm::new(coeffs, Rat::zero());
        if reduced.as_constant().is_some() {
            return Ok(Folded::constant(multiplier));
        }
        Ok(Folded::scaled(
            multiplier,
            HyperAtom {
                body: AtomBody::Sign(reduced),
                exp: 1,
            },
        ))
    }

    /// `P^exp` for a polynomial factor.
    pub fn poly_factor(p: MultiPoly, exp: i64) -> Result<Folded, HyperError> {
        if p.is_zero() {
            return Err(HyperError::IdenticallyZero);
        }
        if exp == 0 {
            return Ok(Folded::constant(Rat::one()));
        }
        if let Some(c) = p.as_constant() {
            return Ok(Folded::constant(pow_rat(&c, exp)));
        }
        // Keep the polynomial primitive: pull the rational unit out so that
        // equal factors merge structurally.
        let (unit, prim) = p.int_primitive();
        if unit.is_one() {
            return Ok(Folded::atom(HyperAtom {
                body: AtomBody::PolyFactor(prim),
                exp,
            }));
        }
        Err(HyperError::InvalidAtom(format!(
            "polynomial factor must be primitive; split off the constant {unit} first"
        )))
    }

    /// All variables mentioned anywhere in the atom.
    pub fn vars(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let push_form = |f: &LinForm, out: &mut Vec<String>| {
            for v in f.vars() {
                out.push(v.to_string());
            }
        };
        match &self.body {
            AtomBody::Factorial(l) | AtomBody::Sign(l) => push_form(l, &mut out),
            AtomBody::Binomial(t, b) => {
                push_form(t, &mut out);
                push_form(b, &mut out);
            }
            AtomBody::Pochhammer { base, len } => {
                push_form(base, &mut out);
                push_form(len, &mut out);
            }
            AtomBody::Power { base, exp } => {
                out.extend(base.vars().iter().cloned());
                push_form(exp, &mut out);
            }
            AtomBody::PolyFactor(p) => out.extend(p.vars().iter().cloned()),
        }
        out.sort();
        out.dedup();
        out
    }

    /// Does the atom mention `var` at all?
    pub fn contains_var(&self, var: &str) -> bool {
        self.vars().iter().any(|v| v == var)
    }
}

/// `x^e` for rational `x` and possibly negative integer `e`; `0^0 = 1`.
pub(crate) fn pow_rat(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        Rat::one() / acc
    } else {
        acc
    }
}

impl fmt::Display for HyperAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Powers fold the outer exponent into the displayed one, so
        // `2^n` raised to -1 prints as `(2)^(-n)` rather than `(2)^(n)^-1`.
        if let AtomBody::Power { base, exp } = &self.body {
            return write!(f, "({base})^({})", exp.scale(self.exp));
        }
        let base = match &self.body {
            AtomBody::Factorial(l) => format!("({l})!"),
            AtomBody::Binomial(t, b) => format!("C({t}, {b})"),
            AtomBody::Pochhammer { base, len } => format!("({base})_({len})"),
            AtomBody::Power { .. } => unreachable!(),
            AtomBody::Sign(l) => format!("(-1)^({l})"),
            AtomBody::PolyFactor(p) => format!("({p})"),
        };
        if self.exp == 1 {
            write!(f, "{base}")
        } else {
            write!(f, "{base}^{}", self.exp)
        }
    }
}
