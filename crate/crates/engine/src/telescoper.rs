//! Certificate discovery: Gosper's algorithm and creative telescoping.
//!
//! Gosper's algorithm decides whether a hypergeometric term `t(k)` has a
//! hypergeometric antidifference `G` with `G(k+1) − G(k) = t(k)`.  Its
//! engine is a normal form of the shift quotient,
//!
//! ```text
//! t(k+1)/t(k) = (a(k)/b(k)) · (c(k+1)/c(k)),   gcd(a(k), b(k+h)) = 1  ∀ h ≥ 0,
//! ```
//!
//! after which an antidifference exists iff the polynomial equation
//! `a(k)·x(k+1) − b(k−1)·x(k) = c(k)` has a polynomial solution, and then
//! `G = R·t` with `R = b(k−1)·x(k)/c(k)`.
//!
//! Creative telescoping reuses the same machinery with unknowns on the
//! right-hand side: for a bivariate term `F(n,k)` it searches, order by
//! order, for `σ_0(n)..σ_J(n)` and a certificate `R` such that
//! `Σ_j σ_j F(n+j,k)` telescopes in `k`, which yields the recurrence
//! `Σ_j σ_j(n)·a(n+j) = 0` for the definite sum `a(n)`.
//!
//! Everything returned from this module is re-verified symbolically before
//! being surfaced.

use num_traits::{One, Signed, Zero};
use wz_algebra::{poly_gcd, MultiPoly, Rat, RatFunc};
use wz_hyperterm::HyperTerm;

use crate::certifier::{self, Certificate, Convention};
use crate::error::EngineError;
use crate::linalg;

/// Largest shift distance searched when locating integer root gaps between
/// numerator and denominator factors.
const MAX_SHIFT_ROOT: i64 = 100_000;

/// `Σ_{j=0..J} coeff_j(n) · a(n+j) = 0` for `a(n) = Σ_k F(n,k)`, witnessed
/// by a telescoping certificate.
#[derive(Debug, Clone)]
pub struct Recurrence {
    pub order: usize,
    /// `coeff_j`, ascending in `j`; polynomials in the recurrence variable.
    pub coefficients: Vec<MultiPoly>,
    /// `R(n,k)` with `Σ_j coeff_j·F(n+j,k) = G(n,k+1) − G(n,k)`,
    /// `G = R·F`.
    pub certificate: RatFunc,
}

// ===== Gosper's algorithm =====

/// The Gosper normal form of a rational quotient `ρ(k)`:
/// `ρ = (a/b)·(c(k+1)/c(k))` with `gcd(a(k), b(k+h)) = 1` for all
/// integers `h ≥ 0`.
struct NormalForm {
    a: MultiPoly,
    b: MultiPoly,
    c: MultiPoly,
}

/// Shift variable used while locating resultant roots; chosen so it cannot
/// collide with identity variables from the parser (which only produces
/// alphanumeric names).
const SHIFT_VAR: &str = "@h";

/// Nonnegative integers `h` with `gcd(a(k), b(k+h)) ≠ 1`, ascending.
///
/// `Res_k(a(k), b(k+h))` is a polynomial in `h` and the parameters; `h₀`
/// qualifies iff it is a root of every coefficient of that polynomial
/// collected by parameter monomials, i.e. of their univariate gcd.
fn nonnegative_shift_roots(a: &MultiPoly, b: &MultiPoly, k: &str) -> Vec<i64> {
    if a.degree_in(k) == 0 || b.degree_in(k) == 0 {
        return Vec::new();
    }
    let shifted = b.subst(k, &(&MultiPoly::var(k) + &MultiPoly::var(SHIFT_VAR)));
    let res = linalg::resultant(a, &shifted, k);
    if res.is_zero() {
        // Cannot happen for nonzero a, b with positive k-degrees unless
        // they share a factor for every h; defensively report no roots.
        return Vec::new();
    }
    // Collect Σ c_{i,m}·h^i·param^m by the parameter monomial m.
    let mut groups: std::collections::BTreeMap<Vec<(String, u32)>, MultiPoly> =
        std::collections::BTreeMap::new();
    let h = MultiPoly::var(SHIFT_VAR);
    for (hpow, coeff) in res.coeffs_in(SHIFT_VAR).into_iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for (m, c) in coeff.iter_terms() {
            let key: Vec<(String, u32)> = coeff
                .vars()
                .iter()
                .zip(&m.0)
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| (v.clone(), *e))
                .collect();
            let contrib = h.pow(hpow as u32).mul_rat(c);
            groups
                .entry(key)
                .and_modify(|g| g.add_assign_poly(&contrib))
                .or_insert(contrib);
        }
    }
    let mut g = MultiPoly::zero();
    for piece in groups.values() {
        g = if g.is_zero() {
            piece.clone()
        } else {
            poly_gcd(&g, piece).expect("nonzero arguments")
        };
    }
    integer_roots_nonneg(&g)
}

/// Nonnegative integer roots of a univariate polynomial, by exact
/// evaluation up to the Cauchy root bound.
fn integer_roots_nonneg(g: &MultiPoly) -> Vec<i64> {
    if g.is_zero() || g.is_constant() {
        return Vec::new();
    }
    let coeffs = g.coeffs_in(SHIFT_VAR);
    let lead = coeffs
        .last()
        .and_then(MultiPoly::as_constant)
        .expect("univariate in the shift variable");
    let mut bound = Rat::one();
    for c in &coeffs[..coeffs.len() - 1] {
        let c = c.as_constant().expect("univariate in the shift variable");
        let q = (c / lead.clone()).abs();
        if q > bound {
            bound = q;
        }
    }
    let cap = (bound.ceil().to_integer() + 1u32).min(MAX_SHIFT_ROOT.into());
    let cap = i64::try_from(cap).unwrap_or(MAX_SHIFT_ROOT);
    let mut roots = Vec::new();
    for hv in 0..=cap {
        let mut p = std::collections::BTreeMap::new();
        p.insert(SHIFT_VAR.to_string(), Rat::from_integer(hv.into()));
        if g.eval(&p).expect("all variables bound").is_zero() {
            roots.push(hv);
        }
    }
    roots
}

/// gcd in `Q(params)[k]`: the primitive part (with respect to `k`) of the
/// multivariate gcd.
fn gcd_in_k(a: &MultiPoly, b: &MultiPoly, k: &str) -> MultiPoly {
    let g = poly_gcd(a, b).expect("nonzero arguments");
    linalg::primitive_part_in(&g, k)
}

fn normal_form(rho: &RatFunc, k: &str) -> NormalForm {
    let mut a = rho.num().clone();
    let mut b = rho.den().clone();
    let mut c = MultiPoly::one();
    for h in nonnegative_shift_roots(&a, &b, k) {
        let g = gcd_in_k(&a, &b.shift_var(k, h), k);
        if g.is_constant() {
            continue;
        }
        a = a.exact_div(&g).expect("gcd divides the numerator");
        b = b
            .exact_div(&g.shift_var(k, -h))
            .expect("shifted gcd divides the denominator");
        for j in 1..=h {
            c = &c * &g.shift_var(k, -j);
        }
    }
    NormalForm { a, b, c }
}

/// Upper bound for the degree of a polynomial `x(k)` solving
/// `A(k)·x(k+1) − B(k)·x(k) = C(k)` with `A = a`, `B = b(k−1)`; `None`
/// when no nonnegative bound exists (hence no solution).
fn degree_bound(a: &MultiPoly, b_back: &MultiPoly, deg_c: i64, k: &str) -> Option<i64> {
    let deg_a = a.degree_in(k) as i64;
    let deg_b = b_back.degree_in(k) as i64;
    let ell = deg_a.max(deg_b);
    let ca = a.coeffs_in(k);
    let cb = b_back.coeffs_in(k);
    if deg_a != deg_b || ca[deg_a as usize] != cb[deg_b as usize] {
        let d = deg_c - ell;
        return (d >= 0).then_some(d);
    }
    // Leading terms cancel: compare the next coefficients.
    let alpha = ca[ell as usize].clone();
    let sub = |cs: &[MultiPoly]| {
        if ell >= 1 {
            cs[(ell - 1) as usize].clone()
        } else {
            MultiPoly::zero()
        }
    };
    let alpha2 = sub(&ca);
    let beta2 = sub(&cb);
    let mut candidates = vec![deg_c - ell + 1];
    let diff = &beta2 - &alpha2;
    if diff.is_zero() {
        candidates.push(0);
    } else if let Ok(q) = RatFunc::new(diff, alpha) {
        if let Some(v) = q.as_constant() {
            if v.is_integer() {
                if let Ok(d2) = i64::try_from(v.to_integer()) {
                    candidates.push(d2);
                }
            }
        }
    }
    let d = candidates.into_iter().max().unwrap();
    (d >= 0).then_some(d)
}

/// Builds the column of `k`-power coefficients contributed to
/// `A(k)·x(k+1) − B(k)·x(k)` by the unknown monomial `x_i·k^i`.
fn unknown_column(a: &MultiPoly, b_back: &MultiPoly, i: i64, k: &str, rows: usize) -> Vec<MultiPoly> {
    let kv = MultiPoly::var(k);
    let k_plus_1 = &kv + &MultiPoly::one();
    let contrib = &(a * &k_plus_1.pow(i as u32)) - &(b_back * &kv.pow(i as u32));
    let mut col = contrib.coeffs_in(k);
    col.resize(rows, MultiPoly::zero());
    col
}

/// Core of Gosper's decision procedure, working directly on the shift
/// quotient `ρ(k) = t(k+1)/t(k)`.  Returns `R` with
/// `R(k+1)·ρ(k) − R(k) = 1`, i.e. `G = R·t` is an antidifference of `t`.
fn gosper_from_quotient(rho: &RatFunc, k: &str) -> Option<RatFunc> {
    let nf = normal_form(rho, k);
    let b_back = nf.b.shift_var(k, -1);
    let d = degree_bound(&nf.a, &b_back, nf.c.degree_in(k) as i64, k)?;
    let rows = (nf.a.degree_in(k).max(b_back.degree_in(k)) as usize + d as usize)
        .max(nf.c.degree_in(k) as usize)
        + 1;
    let mut cols = Vec::new();
    for i in 0..=d {
        cols.push(unknown_column(&nf.a, &b_back, i, k, rows));
    }
    let matrix: Vec<Vec<MultiPoly>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut rhs = nf.c.coeffs_in(k);
    rhs.resize(rows, MultiPoly::zero());
    let x = linalg::solve(&matrix, &rhs)?;
    // x(k) = Σ x_i·k^i with x_i ∈ Q(params); clear to a single fraction.
    let mut den = MultiPoly::one();
    for xi in &x {
        den = linalg::poly_lcm(&den, xi.den());
    }
    let mut x_poly = MultiPoly::zero();
    let kv = MultiPoly::var(k);
    for (i, xi) in x.iter().enumerate() {
        let scale = den.exact_div(xi.den()).expect("lcm divisible");
        x_poly.add_assign_poly(&(&(xi.num() * &scale) * &kv.pow(i as u32)));
    }
    let r = RatFunc::new(&b_back * &x_poly, &nf.c * &den).expect("c and denominators nonzero");
    // Self-check: R(k+1)·ρ − R = 1 exactly.
    let residual = &(&(&r.shift_var(k, 1) * rho) - &r) - &RatFunc::one();
    if residual.is_zero() {
        Some(r)
    } else {
        None
    }
}

/// Gosper's algorithm: decides whether `t` (hypergeometric in `k`, other
/// variables symbolic) has a hypergeometric antidifference, and if so
/// returns `R` in lowest terms with `G = R·t`, `G(k+1) − G(k) = t(k)`.
///
/// The `None` answer is definitive: the degree bound and linear solve are
/// complete, so absence of a solution proves no antidifference exists.
pub fn gosper(t: &HyperTerm, k: &str) -> Result<Option<RatFunc>, EngineError> {
    let rho = t.shift_quotient(k)?;
    Ok(gosper_from_quotient(&rho, k))
}

// ===== Creative telescoping =====

/// Zeilberger's algorithm: finds the minimal-order telescoped recurrence
/// `Σ_{j=0..J} σ_j(n)·a(n+j) = 0` for `a(n) = Σ_k F(n,k)`, trying
/// `J = 1..=max_order`.  Each order is decided definitively (the
/// Gosper-style degree bound is complete), so the first success is the
/// minimal order reachable by telescoping.
pub fn zeilberger(
    f: &HyperTerm,
    n: &str,
    k: &str,
    max_order: usize,
) -> Result<Recurrence, EngineError> {
    let r1 = f.shift_quotient(n)?;
    let r2 = f.shift_quotient(k)?;
    for order in 1..=max_order {
        if let Some(rec) = telescope_at_order(f, n, k, &r1, &r2, order)? {
            return Ok(rec);
        }
    }
    Err(EngineError::NoRecurrence { max_order })
}

fn telescope_at_order(
    f: &HyperTerm,
    n: &str,
    k: &str,
    r1: &RatFunc,
    r2: &RatFunc,
    order: usize,
) -> Result<Option<Recurrence>, EngineError> {
    // s_j = F(n+j,k)/F(n,k) = Π_{i<j} r1(n+i,k); common denominator Q.
    let mut s = vec![RatFunc::one()];
    for j in 0..order {
        let next = &s[j] * &r1.shift_var(n, j as i64);
        s.push(next);
    }
    let mut q = MultiPoly::one();
    for sj in &s {
        q = linalg::poly_lcm(&q, sj.den());
    }
    let p: Vec<MultiPoly> = s
        .iter()
        .map(|sj| {
            let scale = q.exact_div(sj.den()).expect("lcm divisible");
            sj.num() * &scale
        })
        .collect();

    // The summand splits as t = P·H with P = Σ σ_j p_j unknown and
    // H = F/Q known; Gosper-decompose H's quotient r2·Q/Q(k+1).
    let q_quot = RatFunc::new(q.clone(), q.shift_var(k, 1)).expect("nonzero");
    let r0 = &(r2 * &q_quot);
    let nf = normal_form(r0, k);
    let b_back = nf.b.shift_var(k, -1);

    let deg_p = p.iter().map(|pj| pj.degree_in(k) as i64).max().unwrap_or(0);
    let Some(d) = degree_bound(&nf.a, &b_back, nf.c.degree_in(k) as i64 + deg_p, k) else {
        return Ok(None);
    };

    let rows = ((nf.a.degree_in(k).max(b_back.degree_in(k)) as i64 + d)
        .max(nf.c.degree_in(k) as i64 + deg_p) as usize)
        + 1;
    // Homogeneous system in (x_0..x_d, σ_0..σ_J):
    //   a(k)·x(k+1) − b(k−1)·x(k) − c(k)·Σ_j σ_j·p_j(k) = 0.
    let mut cols = Vec::new();
    for i in 0..=d {
        cols.push(unknown_column(&nf.a, &b_back, i, k, rows));
    }
    for pj in &p {
        let contrib = -(&nf.c * pj);
        let mut col = contrib.coeffs_in(k);
        col.resize(rows, MultiPoly::zero());
        cols.push(col);
    }
    let matrix: Vec<Vec<MultiPoly>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let x_count = (d + 1) as usize;
    let basis = linalg::nullspace(&matrix);
    let Some(v) = basis
        .iter()
        .find(|v| v[x_count..].iter().any(|sigma| !sigma.is_zero()))
    else {
        return Ok(None);
    };

    // Normalize: make the σ-vector primitive — no common polynomial
    // factor, integer coefficients with overall gcd 1, leading σ with a
    // positive leading coefficient — rescaling the certificate identically
    // so the telescoping identity is preserved.
    let mut sigmas: Vec<MultiPoly> = v[x_count..].to_vec();
    let mut sigma_gcd = MultiPoly::zero();
    for sigma in sigmas.iter().filter(|s| !s.is_zero()) {
        sigma_gcd = if sigma_gcd.is_zero() {
            sigma.clone()
        } else {
            poly_gcd(&sigma_gcd, sigma).expect("nonzero arguments")
        };
    }
    if !sigma_gcd.is_one() {
        for sigma in sigmas.iter_mut() {
            *sigma = sigma.exact_div(&sigma_gcd).expect("gcd divides every σ");
        }
    }
    let mut content: Option<Rat> = None;
    for sigma in sigmas.iter().filter(|s| !s.is_zero()) {
        let c = sigma.int_primitive().0.abs();
        content = Some(match content {
            None => c,
            Some(prev) => linalg::rat_gcd(&prev, &c),
        });
    }
    let content = content.unwrap_or_else(Rat::one);
    if !content.is_one() {
        let inv = Rat::one() / content.clone();
        for sigma in sigmas.iter_mut() {
            *sigma = sigma.mul_rat(&inv);
        }
    }
    let flip = sigmas
        .iter()
        .rfind(|s| !s.is_zero())
        .is_some_and(|last| last.leading_coeff().is_negative());
    if flip {
        for sigma in sigmas.iter_mut() {
            *sigma = -sigma.clone();
        }
    }
    let mut scale = RatFunc::from_poly(sigma_gcd.mul_rat(&content));
    if flip {
        scale = -scale;
    }

    let kv = MultiPoly::var(k);
    let mut x_poly = MultiPoly::zero();
    for (i, xi) in v[..x_count].iter().enumerate() {
        x_poly.add_assign_poly(&(xi * &kv.pow(i as u32)));
    }
    let r_raw = RatFunc::new(&b_back * &x_poly, &nf.c * &q).expect("nonzero denominator");
    let certificate = &r_raw / &scale;

    while sigmas.len() > 1 && sigmas.last().is_some_and(|s| s.is_zero()) {
        sigmas.pop();
    }
    let rec = Recurrence {
        order: sigmas.len() - 1,
        coefficients: sigmas,
        certificate,
    };
    // Surface nothing unverified: the telescoping identity must hold
    // symbolically.
    let check = certifier::verify_recurrence_telescoping(f, n, k, &rec)?;
    if !check.holds {
        return Ok(None);
    }
    Ok(Some(rec))
}

/// Finds the WZ certificate of a normalized identity `Σ_k F(n,k) = 1`:
/// applies Gosper to the single-term difference `(r1 − 1)·F` where
/// `r1 = F(n+1,k)/F(n,k)`.  The returned certificate satisfies the
/// default-orientation rational identity (re-checked before returning).
pub fn wz_certificate_find(f: &HyperTerm, n: &str, k: &str) -> Result<Certificate, EngineError> {
    let r1 = f.shift_quotient(n)?;
    let delta = &r1 - &RatFunc::one();
    if delta.is_zero() {
        // F(n+1,k) = F(n,k): the zero mate already telescopes.
        return Ok(Certificate::single(RatFunc::zero()));
    }
    // t = (r1 − 1)·F is again hypergeometric; absorb the rational factor
    // as polynomial atoms.
    let t = f
        .clone()
        .mul_poly(delta.num().clone(), 1)?
        .mul_poly(delta.den().clone(), -1)?;
    let r_t = gosper(&t, k)?.ok_or(EngineError::NoWzPair)?;
    let r = &r_t * &delta;
    let cert = Certificate {
        rs: vec![r],
        convention: Convention::ForwardMate,
    };
    let check = certifier::verify_wz_rational(f, n, k, &cert)?;
    if !check.holds {
        return Err(EngineError::NoWzPair);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;
    use wz_algebra::rat;
    use wz_hyperterm::LinForm;

    fn lf(n_c: i64, k_c: i64, c: i64) -> LinForm {
        let mut m = BTreeMap::new();
        m.insert("n".to_string(), n_c);
        m.insert("k".to_string(), k_c);
        LinForm::new(m, rat(c, 1))
    }

    fn k_only(c: i64) -> LinForm {
        lf(0, 1, c)
    }

    fn ratfn(num: MultiPoly, den: MultiPoly) -> RatFunc {
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn gosper_sums_the_identity_term() {
        // t(k) = k → G = k(k−1)/2, R = (k−1)/2.
        let t = HyperTerm::one().mul_poly(MultiPoly::var("k"), 1).unwrap();
        let r = gosper(&t, "k").unwrap().expect("summable");
        let k = MultiPoly::var("k");
        let expect = ratfn(&k - &MultiPoly::one(), MultiPoly::from_int(2));
        assert_eq!(r, expect);
    }

    #[test]
    fn gosper_sums_a_rational_telescoper() {
        // t(k) = 1/(k(k+1)) → G = −1/k, R = −(k+1).
        let k = MultiPoly::var("k");
        let t = HyperTerm::one()
            .mul_poly(k.clone(), -1)
            .unwrap()
            .mul_poly(&k + &MultiPoly::one(), -1)
            .unwrap();
        let r = gosper(&t, "k").unwrap().expect("summable");
        assert_eq!(r, RatFunc::from_poly(-(&k + &MultiPoly::one())));
    }

    #[test]
    fn gosper_rejects_the_factorial() {
        let t = HyperTerm::one().mul_factorial(k_only(0), 1).unwrap();
        assert!(gosper(&t, "k").unwrap().is_none());
    }

    #[test]
    fn gosper_sums_binomial_times_geometric() {
        // t(k) = C(n,k)·(−1)^k has antidifference −C(n−1,k−1)·(−1)^k... in
        // particular Gosper succeeds; verify via the returned R.
        let t = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), k_only(0), 1)
            .unwrap()
            .mul_sign(k_only(0))
            .unwrap();
        let r = gosper(&t, "k").unwrap().expect("summable");
        let rho = t.shift_quotient("k").unwrap();
        let residual = &(&(&r.shift_var("k", 1) * &rho) - &r) - &RatFunc::one();
        assert!(residual.is_zero());
    }

    #[test]
    fn gosper_rejects_plain_binomial_summand() {
        // Σ_k C(n,k) has no hypergeometric antidifference in k.
        let t = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), k_only(0), 1)
            .unwrap();
        assert!(gosper(&t, "k").unwrap().is_none());
    }

    #[test]
    fn wz_certificate_for_the_binomial_identity() {
        // F = C(n,k)/2^n normalized; certificate −k/(2(n+1−k)).
        let f = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), k_only(0), 1)
            .unwrap()
            .mul_power(MultiPoly::constant(rat(2, 1)), lf(1, 0, 0), -1)
            .unwrap();
        let cert = wz_certificate_find(&f, "n", "k").unwrap();
        let n = MultiPoly::var("n");
        let k = MultiPoly::var("k");
        let expect = ratfn(
            -k.clone(),
            (&(&n - &k) + &MultiPoly::one()).mul_rat(&rat(2, 1)),
        );
        assert_eq!(cert.r(), &expect);
        assert_eq!(cert.convention, Convention::ForwardMate);
    }

    #[test]
    fn wz_find_reports_no_pair_for_non_constant_sum() {
        // F = C(n,k)/3^n: Σ_k F = (2/3)^n ≠ 1, no WZ pair exists.
        let f = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), k_only(0), 1)
            .unwrap()
            .mul_power(MultiPoly::constant(rat(3, 1)), lf(1, 0, 0), -1)
            .unwrap();
        match wz_certificate_find(&f, "n", "k") {
            Err(EngineError::NoWzPair) => {}
            other => panic!("expected NoWzPair, got {other:?}"),
        }
    }

    #[test]
    fn zeilberger_finds_the_binomial_recurrence() {
        // Σ_k C(n,k) = 2^n: a(n+1) − 2a(n) = 0.
        let f = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), k_only(0), 1)
            .unwrap();
        let rec = zeilberger(&f, "n", "k", 6).unwrap();
        assert_eq!(rec.order, 1);
        assert_eq!(rec.coefficients[0], MultiPoly::from_int(-2));
        assert_eq!(rec.coefficients[1], MultiPoly::one());
    }

    #[test]
    fn zeilberger_finds_the_central_binomial_recurrence() {
        // Σ_k C(n,k)² = C(2n,n): (n+1)a(n+1) − 2(2n+1)a(n) = 0.
        let f = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), k_only(0), 2)
            .unwrap();
        let rec = zeilberger(&f, "n", "k", 6).unwrap();
        assert_eq!(rec.order, 1);
        let n = MultiPoly::var("n");
        let expect0 = -(&n.mul_rat(&rat(4, 1)) + &MultiPoly::from_int(2));
        let expect1 = &n + &MultiPoly::one();
        assert_eq!(rec.coefficients[0], expect0);
        assert_eq!(rec.coefficients[1], expect1);
    }

    #[test]
    fn zeilberger_apery_summand_needs_order_two() {
        // F = C(n,k)²·C(n+k,k)²: the order-2 recurrence of the Apéry
        // numbers; order 1 must fail definitively first.
        let f = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), k_only(0), 2)
            .unwrap()
            .mul_binomial(lf(1, 1, 0), k_only(0), 2)
            .unwrap();
        let rec = zeilberger(&f, "n", "k", 6).unwrap();
        assert_eq!(rec.order, 2);
        // (n+2)³·a(n+2) − (2n+3)(17n²+51n+39)·a(n+1) + (n+1)³·a(n) = 0,
        // up to an overall unit; our normalization fixes the leading
        // coefficient to (n+2)³.
        let n = MultiPoly::var("n");
        let np1 = &n + &MultiPoly::one();
        let np2 = &n + &MultiPoly::from_int(2);
        assert_eq!(rec.coefficients[2], np2.pow(3));
        assert_eq!(rec.coefficients[0], np1.pow(3));
        let middle = &(&n.mul_rat(&rat(2, 1)) + &MultiPoly::from_int(3))
            * &MultiPoly::from_terms(
                &["n"],
                &[(rat(17, 1), vec![2]), (rat(51, 1), vec![1]), (rat(39, 1), vec![0])],
            );
        assert_eq!(rec.coefficients[1], -middle);
    }

    #[test]
    fn recurrences_are_self_verified() {
        let f = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), k_only(0), 2)
            .unwrap()
            .mul_binomial(lf(1, 1, 0), k_only(0), 2)
            .unwrap();
        let rec = zeilberger(&f, "n", "k", 6).unwrap();
        let check = certifier::verify_recurrence_telescoping(&f, "n", "k", &rec).unwrap();
        assert!(check.holds);
    }
}
