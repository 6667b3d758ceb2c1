//! Closed-form reconstruction of certificate mates.
//!
//! Given a term `F` and a rational certificate `R`, the mate `G = R·F` is
//! itself hypergeometric, but the product is only useful to the prover if it
//! is written as a single structured term again: boundary checks need its
//! natural support, and evaluation near poles of `R` needs the cancellation
//! to have happened *symbolically*.  This module rebuilds `G` by absorbing
//! each linear factor of `den(R)` into one of `F`'s atoms:
//!
//! * `1/M! ÷ (M+d)      = (M+1)⋯(M+d-1) · 1/(M+d)!`          (d ≥ 1)
//! * `M!   ÷ (M+d)      = (M)(M-1)⋯(M+d+1) · (M+d-1)!`       (d ≤ 0)
//! * `1/(b)_L ÷ (b+L+d) = (b+L)⋯(b+L+d-1) / (b)_(L+d+1)`     (d ≥ 0)
//! * `1/(b)_L ÷ (b-d)   = (b-1)⋯(b-d+1)   / (b-d)_(L+d)`     (d ≥ 1)
//! * `(b)_L ÷ (b+L-1-d) = (b+L-d)⋯(b+L-1) · (b)_(L-d-1)`     (d ≥ 0)
//! * `(b)_L ÷ (b+d)     = (b)⋯(b+d-1)     · (b+d+1)_(L-d-1)` (d ≥ 0)
//! * `base^E ÷ base     = base^(E-1)`
//!
//! plus plain cancellation against polynomial factors already present.  A
//! factor nothing absorbs survives as an explicit `1/Q` factor — still
//! exact, merely carrying less support information.

use num_traits::{One, Zero};
use wz_algebra::{MultiPoly, Rat, RatFunc};

use crate::atom::AtomBody;
use crate::{HyperError, HyperTerm, LinForm};

/// Largest shift distance the absorption rules will bridge; larger shifts
/// would manufacture huge spurious numerator products.
const MAX_SHIFT: i64 = 64;

/// Express `r · f` as a single structured term.
pub fn mate_closed_form(f: &HyperTerm, r: &RatFunc) -> Result<HyperTerm, HyperError> {
    if r.is_zero() {
        return Err(HyperError::IdenticallyZero);
    }
    let mut g = f.expanded()?;

    // Candidate factor pool for splitting both sides of `r`.
    let candidates = candidate_factors(&g, r);

    // Numerator: constant into the unit, linear factors as explicit
    // polynomial atoms (pushing merges them against reciprocal ones).
    let (num_unit, num_prim) = r.num().int_primitive();
    g = g.mul_rat(num_unit)?;
    let (num_factors, num_leftover) = split_factors(&num_prim, &candidates);
    for (q, mult) in num_factors {
        g = g.mul_poly(q, mult)?;
    }
    if !num_leftover.is_one() {
        g = g.mul_poly(num_leftover, 1)?;
    }

    // Denominator: absorb factor by factor.
    let (den_unit, den_prim) = r.den().int_primitive();
    g = g.mul_rat(Rat::one() / den_unit)?;
    let (den_factors, den_leftover) = split_factors(&den_prim, &candidates);
    for (q, mult) in den_factors {
        for _ in 0..mult {
            g = absorb_one(g, &q)?;
        }
    }
    if !den_leftover.is_one() {
        g = g.mul_poly(den_leftover, -1)?;
    }
    Ok(g)
}

// ===== factor splitting =====

/// Primitive polynomials worth trying as exact divisors: every factor of
/// every shift quotient of `g` (and small shifts of those), then a sweep of
/// single-variable forms `αv + β`.
fn candidate_factors(g: &HyperTerm, r: &RatFunc) -> Vec<MultiPoly> {
    fn push(p: &MultiPoly, out: &mut Vec<MultiPoly>) {
        let (_, prim) = p.int_primitive();
        if !prim.is_constant() && !out.contains(&prim) {
            out.push(prim);
        }
    }
    let mut out: Vec<MultiPoly> = Vec::new();
    for var in g.vars() {
        // A term that is not hypergeometric in some variable simply
        // contributes no candidates for it.
        let Ok(fact) = g.shift_quotient_factored(&var) else {
            continue;
        };
        for (p, _) in fact.factors() {
            for v in p.vars().to_vec() {
                for delta in -2..=2 {
                    push(&p.shift_var(&v, delta), &mut out);
                }
            }
            push(p, &mut out);
        }
    }
    // Single-variable sweep over the variables the certificate mentions.
    let mut cert_vars: Vec<String> = r.den().vars().to_vec();
    cert_vars.extend(r.num().vars().iter().cloned());
    cert_vars.sort();
    cert_vars.dedup();
    for v in &cert_vars {
        for alpha in 1..=8i64 {
            for beta in -12..=12i64 {
                let p = &MultiPoly::var(v).mul_rat(&Rat::from_integer(alpha.into()))
                    + &MultiPoly::from_int(beta);
                push(&p, &mut out);
            }
        }
    }
    out
}

/// Divide out candidate factors with multiplicity; returns the factors found
/// and the (primitive, positive-leading-coefficient) leftover.  A linear
/// leftover is claimed as a factor of its own.
fn split_factors(p: &MultiPoly, candidates: &[MultiPoly]) -> (Vec<(MultiPoly, i64)>, MultiPoly) {
    let mut rem = p.clone();
    let mut found: Vec<(MultiPoly, i64)> = Vec::new();
    for c in candidates {
        if rem.is_constant() {
            break;
        }
        let mut mult = 0i64;
        while let Some(q) = rem.exact_div(c) {
            rem = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((c.clone(), mult));
        }
    }
    if rem.total_degree() == 1 {
        let (_, prim) = rem.int_primitive();
        found.push((prim, 1));
        rem = MultiPoly::one();
    }
    if rem.is_constant() {
        // Primitive inputs divided by primitive factors leave exactly 1.
        debug_assert!(rem.is_one());
        rem = MultiPoly::one();
    }
    (found, rem)
}

// ===== matching =====

/// Coefficient of `v` in a polynomial that is linear in `v` (the
/// degree-one coefficient must itself be constant).
fn linear_coeff(q: &MultiPoly, v: &str) -> Option<Rat> {
    if q.degree_in(v) != 1 {
        return None;
    }
    q.coeffs_in(v).get(1).and_then(|c| c.as_constant())
}

/// Solve `q = c · (B + d)` for rational `c ≠ 0` and integer `d`, where `B`
/// is the polynomial of a linear form.
fn match_shifted(q: &MultiPoly, b: &LinForm) -> Option<(Rat, i64)> {
    let (v0, m0) = b.coeffs().iter().next()?;
    let qc = linear_coeff(q, v0)?;
    let c = qc / Rat::from_integer((*m0).into());
    if c.is_zero() {
        return None;
    }
    let diff = &q.mul_rat(&(Rat::one() / &c)) - &b.to_poly();
    let d = diff.as_constant()?;
    if !d.is_integer() {
        return None;
    }
    let d = i64::try_from(d.to_integer()).ok()?;
    if d.abs() > MAX_SHIFT {
        return None;
    }
    Some((c, d))
}

/// Solve `q = c · p` for rational `c ≠ 0`.
fn match_proportional(q: &MultiPoly, p: &MultiPoly) -> Option<Rat> {
    let (uq, pq) = q.int_primitive();
    let (up, pp) = p.int_primitive();
    (pq == pp).then(|| uq / up)
}

// ===== absorption =====

/// What one absorption step decided to do, with everything it needs cloned
/// out of the term so the rewrite can consume it.
enum Rule {
    /// Cancel against an existing polynomial factor.
    CancelPoly(MultiPoly, Rat),
    /// `1/M! ÷ (M+d)` with `d ≥ 1`.
    RecipFactorial(LinForm, Rat, i64),
    /// `M! ÷ (M+d)` with `d ≤ 0`.
    Factorial(LinForm, Rat, i64),
    /// `1/(b)_L ÷ (b+L+d)` with `d ≥ 0`.
    RecipPochTop(LinForm, LinForm, Rat, i64),
    /// `1/(b)_L ÷ (b-d)` with `d ≥ 1`.
    RecipPochBase(LinForm, LinForm, Rat, i64),
    /// `(b)_L ÷ (b+L-1-d)` with `d ≥ 0`.
    PochTop(LinForm, LinForm, Rat, i64),
    /// `(b)_L ÷ (b+d)` with `d ≥ 0`.
    PochBase(LinForm, LinForm, Rat, i64),
    /// `base^E ÷ base`.
    Power(MultiPoly, LinForm, i64, Rat),
}

fn find_rule(g: &HyperTerm, q: &MultiPoly) -> Option<Rule> {
    // Plain cancellation against a present polynomial factor.
    for a in g.atoms() {
        if let AtomBody::PolyFactor(p) = &a.body {
            if a.exp > 0 {
                if let Some(c) = match_proportional(q, p) {
                    return Some(Rule::CancelPoly(p.clone(), c));
                }
            }
        }
    }
    // Reciprocal factorials.
    for a in g.atoms() {
        if let AtomBody::Factorial(m) = &a.body {
            if a.exp < 0 {
                if let Some((c, d)) = match_shifted(q, m) {
                    if d >= 1 {
                        return Some(Rule::RecipFactorial(m.clone(), c, d));
                    }
                }
            }
        }
    }
    // Positive factorials.
    for a in g.atoms() {
        if let AtomBody::Factorial(m) = &a.body {
            if a.exp > 0 {
                if let Some((c, d)) = match_shifted(q, m) {
                    if d <= 0 {
                        return Some(Rule::Factorial(m.clone(), c, d));
                    }
                }
            }
        }
    }
    // Reciprocal Pochhammers.
    for a in g.atoms() {
        if let AtomBody::Pochhammer { base, len } = &a.body {
            if a.exp < 0 {
                let top = base.add(len);
                if let Some((c, d)) = match_shifted(q, &top) {
                    if d >= 0 {
                        return Some(Rule::RecipPochTop(base.clone(), len.clone(), c, d));
                    }
                }
                if let Some((c, d)) = match_shifted(q, base) {
                    if d <= -1 {
                        return Some(Rule::RecipPochBase(base.clone(), len.clone(), c, -d));
                    }
                }
            }
        }
    }
    // Positive Pochhammers.
    for a in g.atoms() {
        if let AtomBody::Pochhammer { base, len } = &a.body {
            if a.exp > 0 {
                let top = base.add(len);
                if let Some((c, e)) = match_shifted(q, &top) {
                    if e <= -1 {
                        return Some(Rule::PochTop(base.clone(), len.clone(), c, -1 - e));
                    }
                }
                if let Some((c, d)) = match_shifted(q, base) {
                    if d >= 0 {
                        return Some(Rule::PochBase(base.clone(), len.clone(), c, d));
                    }
                }
            }
        }
    }
    // Powers with a proportional base.
    for a in g.atoms() {
        if let AtomBody::Power { base, exp } = &a.body {
            if let Some(c) = match_proportional(q, base) {
                return Some(Rule::Power(base.clone(), exp.clone(), a.exp, c));
            }
        }
    }
    None
}

/// Divide `g` by one linear factor `q`, rewriting one atom when a rule
/// applies and falling back to an explicit reciprocal factor otherwise.
fn absorb_one(g: HyperTerm, q: &MultiPoly) -> Result<HyperTerm, HyperError> {
    let Some(rule) = find_rule(&g, q) else {
        return g.mul_poly(q.clone(), -1);
    };
    match rule {
        Rule::CancelPoly(p, c) => g.mul_rat(Rat::one() / c)?.mul_poly(p, -1),
        Rule::RecipFactorial(m, c, d) => {
            let mut out = g
                .mul_rat(Rat::one() / c)?
                .mul_factorial(m.clone(), 1)?
                .mul_factorial(m.add_int(d), -1)?;
            for i in 1..d {
                out = out.mul_poly(m.add_int(i).to_poly(), 1)?;
            }
            Ok(out)
        }
        Rule::Factorial(m, c, d) => {
            let mut out = g
                .mul_rat(Rat::one() / c)?
                .mul_factorial(m.clone(), -1)?
                .mul_factorial(m.add_int(d - 1), 1)?;
            for i in 0..-d {
                out = out.mul_poly(m.add_int(-i).to_poly(), 1)?;
            }
            Ok(out)
        }
        Rule::RecipPochTop(base, len, c, d) => {
            let top = base.add(&len);
            let mut out = g
                .mul_rat(Rat::one() / c)?
                .mul_pochhammer(base.clone(), len.clone(), 1)?
                .mul_pochhammer(base, len.add_int(d + 1), -1)?;
            for j in 0..d {
                out = out.mul_poly(top.add_int(j).to_poly(), 1)?;
            }
            Ok(out)
        }
        Rule::RecipPochBase(base, len, c, d) => {
            let mut out = g
                .mul_rat(Rat::one() / c)?
                .mul_pochhammer(base.clone(), len.clone(), 1)?
                .mul_pochhammer(base.add_int(-d), len.add_int(d), -1)?;
            for j in 1..d {
                out = out.mul_poly(base.add_int(-j).to_poly(), 1)?;
            }
            Ok(out)
        }
        Rule::PochTop(base, len, c, d) => {
            let top = base.add(&len);
            let mut out = g
                .mul_rat(Rat::one() / c)?
                .mul_pochhammer(base.clone(), len.clone(), -1)?
                .mul_pochhammer(base, len.add_int(-d - 1), 1)?;
            for i in 0..d {
                out = out.mul_poly(top.add_int(-d + i).to_poly(), 1)?;
            }
            Ok(out)
        }
        Rule::PochBase(base, len, c, d) => {
            let mut out = g
                .mul_rat(Rat::one() / c)?
                .mul_pochhammer(base.clone(), len.clone(), -1)?
                .mul_pochhammer(base.add_int(d + 1), len.add_int(-d - 1), 1)?;
            for j in 0..d {
                out = out.mul_poly(base.add_int(j).to_poly(), 1)?;
            }
            Ok(out)
        }
        Rule::Power(base, le, atom_exp, c) => {
            let folded = le.scale(atom_exp).add_int(-1);
            g.mul_rat(Rat::one() / c)?
                .mul_power(base.clone(), le, -atom_exp)?
                .mul_power(base, folded, 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;
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

    fn halved_binomial() -> HyperTerm {
        HyperTerm::one()
            .mul_binomial(n(), k(), 1)
            .unwrap()
            .mul_power(MultiPoly::constant(rat(2, 1)), n(), -1)
            .unwrap()
    }

    fn halved_binomial_certificate() -> RatFunc {
        let num = MultiPoly::var("k").mul_rat(&rat(-1, 1));
        let den = (&(&MultiPoly::var("n") - &MultiPoly::var("k")) + &MultiPoly::one())
            .mul_rat(&rat(2, 1));
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn binomial_mate_matches_the_known_closed_form() {
        let g = mate_closed_form(&halved_binomial(), &halved_binomial_certificate()).unwrap();

        // G = -1/2 · k · n! / (k! (n-k+1)!) / 2^n.
        let expected = HyperTerm::one()
            .mul_rat(rat(-1, 2))
            .unwrap()
            .mul_poly(MultiPoly::var("k"), 1)
            .unwrap()
            .mul_factorial(n(), 1)
            .unwrap()
            .mul_factorial(k(), -1)
            .unwrap()
            .mul_factorial(n().sub(&k()).add_int(1), -1)
            .unwrap()
            .mul_power(MultiPoly::constant(rat(2, 1)), n(), -1)
            .unwrap();
        assert_eq!(g, expected);

        // Its support in k widens to [0, n+1].
        let s = g.natural_support("k").unwrap();
        let (lo, hi) = s.tightest();
        assert_eq!(lo.unwrap().at, LinForm::int(0));
        assert_eq!(hi.unwrap().at, n().add_int(1));
    }

    /// The closed form agrees with R·F numerically away from R's poles.
    #[test]
    fn closed_form_agrees_with_the_product_on_a_grid() {
        let f = halved_binomial();
        let r = halved_binomial_certificate();
        let g = mate_closed_form(&f, &r).unwrap();
        for nv in 0..=7i64 {
            for kv in -1..=nv + 2 {
                let p = point(&[("n", nv), ("k", kv)]);
                let gv = g.eval_exact(&p).unwrap();
                if let (Ok(rv), Ok(fv)) = (r.eval(&p), f.eval_exact(&p)) {
                    assert_eq!(gv, rv * fv, "at n={nv} k={kv}");
                }
            }
        }
    }

    #[test]
    fn pochhammer_top_shed() {
        // Divide (1/2)_(k+1) by (2k+1)/1: Q = 2·(b + L - 1) for b = 1/2,
        // L = k+1, so the top factor (k + 1/2) sheds.
        let f = HyperTerm::one()
            .mul_pochhammer(LinForm::constant(rat(1, 2)), k().add_int(1), 1)
            .unwrap();
        let q = &MultiPoly::var("k").mul_rat(&rat(2, 1)) + &MultiPoly::one();
        let r = RatFunc::new(MultiPoly::one(), q).unwrap();
        let g = mate_closed_form(&f, &r).unwrap();
        let expected = HyperTerm::one()
            .mul_rat(rat(1, 2))
            .unwrap()
            .mul_pochhammer(LinForm::constant(rat(1, 2)), k(), 1)
            .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn unabsorbable_factor_survives_as_reciprocal() {
        let f = HyperTerm::one().mul_factorial(k(), -1).unwrap();
        // den = k² + 1 is irreducible and matches nothing.
        let den = &(&MultiPoly::var("k") * &MultiPoly::var("k")) + &MultiPoly::one();
        let r = RatFunc::new(MultiPoly::one(), den.clone()).unwrap();
        let g = mate_closed_form(&f, &r).unwrap();
        let expected = HyperTerm::one()
            .mul_factorial(k(), -1)
            .unwrap()
            .mul_poly(den, -1)
            .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn numerator_factors_cancel_against_existing_reciprocals() {
        // f carries 1/(4k+1); R = (4k+1): the product is free of both.
        let p = &MultiPoly::var("k").mul_rat(&rat(4, 1)) + &MultiPoly::one();
        let f = HyperTerm::one()
            .mul_poly(p.clone(), -1)
            .unwrap()
            .mul_factorial(k(), -1)
            .unwrap();
        let r = RatFunc::new(p, MultiPoly::one()).unwrap();
        let g = mate_closed_form(&f, &r).unwrap();
        let expected = HyperTerm::one().mul_factorial(k(), -1).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn power_bases_absorb_one_unit() {
        // (x+1)^n ÷ (x+1) = (x+1)^(n-1).
        let base = &MultiPoly::var("x") + &MultiPoly::one();
        let f = HyperTerm::one().mul_power(base.clone(), n(), 1).unwrap();
        let r = RatFunc::new(MultiPoly::one(), base.clone()).unwrap();
        let g = mate_closed_form(&f, &r).unwrap();
        let expected = HyperTerm::one()
            .mul_power(base, n().add_int(-1), 1)
            .unwrap();
        assert_eq!(g, expected);
    }
}
