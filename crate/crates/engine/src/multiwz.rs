//! Telescoping over several summation variables at once.
//!
//! For a term `F(n, k_1..k_r)` normalized so the conjectured sum is 1, a
//! certificate is a vector of rational functions `R_1..R_r` making
//!
//! ```text
//! F(n+1,K) − F(n,K) = Σ_i [ G_i(K + e_i) − G_i(K) ],    G_i = R_i·F,
//! ```
//!
//! hold identically.  Dividing by `F` turns this into one rational
//! identity in the shift quotients `r_n = F(n+1,·)/F` and
//! `ρ_i = F(·, k_i+1)/F`:
//!
//! ```text
//! r_n − 1 = Σ_i [ R_i(k_i→k_i+1)·ρ_i − R_i ],
//! ```
//!
//! which is what [`verify_multi`] checks after clearing denominators.
//! When `F` has compact support in every `k_i`, summing the displayed
//! difference equation over the whole lattice telescopes the right side
//! to zero, so the sum is independent of `n` and one base case finishes
//! the proof.
//!
//! Discovery ([`find_multi_ansatz`]) is a bounded linear search rather
//! than an elimination algorithm: the `R_i` share a trial denominator
//! assembled from the poles of the shift quotients — the only places a
//! certificate can blow up — and the numerators are unknown polynomials
//! of bounded total degree.  Matching coefficients in the cleared
//! identity gives a rational linear system; any solution is re-verified
//! before being returned.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use wz_algebra::{MultiPoly, Rat, RatFunc};
use wz_hyperterm::{Factored, HyperTerm};

use crate::certifier::{convention_rhs, Convention, WzCheck};
use crate::error::EngineError;
use crate::linalg;

/// A multi-sum certificate: one mate ratio per summation variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCert {
    /// `R_i`, in the order of the summation variables.
    pub rs: Vec<RatFunc>,
    /// Orientation of the difference operators (shared by all variables).
    pub convention: Convention,
}

impl MultiCert {
    /// A certificate in the default (forward-mate) orientation.
    pub fn forward(rs: Vec<RatFunc>) -> Self {
        MultiCert {
            rs,
            convention: Convention::ForwardMate,
        }
    }
}

/// Checks `r_n − 1 = Σ_i [R_i(k_i→k_i+1)·ρ_i − R_i]` (in the
/// certificate's orientation) as a single cleared-denominator polynomial
/// identity.  With one summation variable this is exactly the
/// single-sum rational WZ check.
pub fn verify_multi(
    f: &HyperTerm,
    n: &str,
    ks: &[&str],
    cert: &MultiCert,
) -> Result<WzCheck, EngineError> {
    if cert.rs.len() != ks.len() {
        return Err(EngineError::Unsupported(format!(
            "certificate has {} component(s) but there are {} summation variable(s)",
            cert.rs.len(),
            ks.len()
        )));
    }
    let r_n = f.shift_quotient(n)?;
    let lhs = &r_n - &RatFunc::one();
    let mut rhs = RatFunc::zero();
    for (ki, r_i) in ks.iter().zip(&cert.rs) {
        let rho = f.shift_quotient(ki)?;
        rhs = &rhs + &convention_rhs(r_i, &rho, cert.convention, ki);
    }
    let diff = &lhs - &rhs;
    Ok(WzCheck {
        holds: diff.is_zero(),
        residual: diff.num().clone(),
    })
}

// ===== Ansatz search =====

/// A product of polynomial factors with positive integer multiplicities.
/// Keys are integer-primitive with positive leading coefficient, so equal
/// factors from different quotients unify.
type FactorSet = BTreeMap<MultiPoly, u32>;

/// A factored shift quotient split into unit, numerator factors and
/// denominator factors.
struct QuotientParts {
    unit: Rat,
    num: FactorSet,
    den: FactorSet,
}

fn quotient_parts(fac: &Factored) -> QuotientParts {
    let mut num = FactorSet::new();
    let mut den = FactorSet::new();
    for (p, e) in fac.factors() {
        if *e > 0 {
            *num.entry(p.clone()).or_insert(0) += *e as u32;
        } else {
            *den.entry(p.clone()).or_insert(0) += (-*e) as u32;
        }
    }
    QuotientParts {
        unit: fac.unit().clone(),
        num,
        den,
    }
}

fn merge_max(into: &mut FactorSet, other: &FactorSet) {
    for (p, e) in other {
        let slot = into.entry(p.clone()).or_insert(0);
        *slot = (*slot).max(*e);
    }
}

fn merge_sum(into: &mut FactorSet, other: &FactorSet) {
    for (p, e) in other {
        *into.entry(p.clone()).or_insert(0) += *e;
    }
}

/// `m / d` as factor multisets; requires `d ⊆ m`, which holds for every
/// quotient taken here because `m` was built as a max/sum over `d`.
fn factor_quotient(m: &FactorSet, d: &FactorSet) -> FactorSet {
    let mut out = FactorSet::new();
    for (p, e) in m {
        let cut = d.get(p).copied().unwrap_or(0);
        if *e > cut {
            out.insert(p.clone(), *e - cut);
        }
    }
    out
}

fn expand(factors: &FactorSet) -> MultiPoly {
    let mut out = MultiPoly::one();
    for (p, e) in factors {
        out = &out * &p.pow(*e);
    }
    out
}

/// All exponent vectors of the given width with total degree ≤ `bound`,
/// in a fixed deterministic order.
fn bounded_exponents(width: usize, bound: u32) -> Vec<Vec<u32>> {
    fn fill(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            fill(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    fill(0, bound, &mut vec![0; width], &mut out);
    out
}

/// Trial denominator multiplicity vectors over the factor pool: entries in
/// `{0,1,2}`, cheapest first (ascending total multiplicity, then
/// lexicographic).
fn multiplicity_vectors(width: usize) -> Vec<Vec<u32>> {
    let mut all = vec![Vec::new()];
    for _ in 0..width {
        all = all
            .into_iter()
            .flat_map(|v| {
                (0..=2u32).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    all.sort_by_key(|v| (v.iter().sum::<u32>(), v.clone()));
    all
}

fn monomial_poly(vars: &[String], exponents: &[u32]) -> MultiPoly {
    let mut out = MultiPoly::one();
    for (v, e) in vars.iter().zip(exponents) {
        if *e > 0 {
            out = &out * &MultiPoly::var(v).pow(*e);
        }
    }
    out
}

/// Terms of `p` keyed by variable-name/exponent pairs, so coefficients
/// from polynomials with different variable lists can be matched up.
fn keyed_terms(p: &MultiPoly) -> Vec<(Vec<(String, u32)>, Rat)> {
    let vars = p.vars();
    p.iter_terms()
        .map(|(m, c)| {
            let key: Vec<(String, u32)> = vars
                .iter()
                .zip(&m.0)
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| (v.clone(), *e))
                .collect();
            (key, c.clone())
        })
        .collect()
}

/// Searches for a certificate whose components share a denominator built
/// from the shift-quotient poles of `f` (each factor with multiplicity at
/// most 2) and whose numerators are polynomials of total degree at most
/// `degree_bound` in all of `f`'s variables.  Trial denominators are
/// tried cheapest-first; the first solvable, verified system wins.
/// Returns `None` when every trial is inconsistent at this bound — a
/// larger bound may still succeed.
pub fn find_multi_ansatz(
    f: &HyperTerm,
    n: &str,
    ks: &[&str],
    degree_bound: u32,
) -> Result<Option<MultiCert>, EngineError> {
    let qn = quotient_parts(&f.shift_quotient_factored(n)?);
    let mut qks = Vec::with_capacity(ks.len());
    for ki in ks {
        qks.push(quotient_parts(&f.shift_quotient_factored(ki)?));
    }

    // Pole pool: denominator factors of any shift quotient, deduplicated,
    // in display order (a stable, human-predictable tie-break).
    let mut pool: Vec<MultiPoly> = Vec::new();
    let mut seen = BTreeSet::new();
    for parts in std::iter::once(&qn).chain(qks.iter()) {
        for p in parts.den.keys() {
            if seen.insert(p.clone()) {
                pool.push(p.clone());
            }
        }
    }
    pool.sort_by_key(ToString::to_string);

    let vars = f.vars();
    let monos = bounded_exponents(vars.len(), degree_bound);

    for evec in multiplicity_vectors(pool.len()) {
        if let Some(cert) = try_ansatz(f, n, ks, &qn, &qks, &pool, &evec, &vars, &monos)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// One trial: fix the shared denominator `D = Π pool_p^{e_p}`, set up the
/// cleared identity with unknown numerator coefficients, and solve.
#[allow(clippy::too_many_arguments)]
fn try_ansatz(
    f: &HyperTerm,
    n: &str,
    ks: &[&str],
    qn: &QuotientParts,
    qks: &[QuotientParts],
    pool: &[MultiPoly],
    evec: &[u32],
    vars: &[String],
    monos: &[Vec<u32>],
) -> Result<Option<MultiCert>, EngineError> {
    let mut d_set = FactorSet::new();
    for (p, e) in pool.iter().zip(evec) {
        if *e > 0 {
            d_set.insert(p.clone(), *e);
        }
    }

    // A common multiple M of every denominator in
    //   r_n − 1 − Σ_i [ (N_i/D)(k_i→k_i+1)·ρ_i − N_i/D ] = 0:
    // den(r_n), D itself, and D(k_i→k_i+1)·den(ρ_i) per variable.
    let mut m_set = qn.den.clone();
    merge_max(&mut m_set, &d_set);
    let mut term_dens = Vec::with_capacity(ks.len());
    for (ki, qi) in ks.iter().zip(qks) {
        let mut den = FactorSet::new();
        for (p, e) in &d_set {
            *den.entry(p.shift_var(ki, 1)).or_insert(0) += *e;
        }
        merge_sum(&mut den, &qi.den);
        merge_max(&mut m_set, &den);
        term_dens.push(den);
    }
    let m_poly = expand(&m_set);

    // Constant part of the cleared identity: M·(r_n − 1).
    let p0 = {
        let through = expand(&factor_quotient(&m_set, &qn.den));
        &(&through * &expand(&qn.num)).mul_rat(&qn.unit) - &m_poly
    };

    // Column for unknown c_{i,m}: M·[ m(k_i→k_i+1)·ρ_i/D(k_i→k_i+1) − m/D ].
    let w0 = expand(&factor_quotient(&m_set, &d_set));
    let mut columns = Vec::with_capacity(ks.len() * monos.len());
    for (idx, (ki, qi)) in ks.iter().zip(qks).enumerate() {
        let wi = {
            let through = expand(&factor_quotient(&m_set, &term_dens[idx]));
            (&through * &expand(&qi.num)).mul_rat(&qi.unit)
        };
        for mono in monos {
            let m = monomial_poly(vars, mono);
            columns.push(&(&wi * &m.shift_var(ki, 1)) - &(&w0 * &m));
        }
    }

    // Match coefficients:  Σ_j c_j·column_j = p0  monomial by monomial.
    let mut keys: BTreeSet<Vec<(String, u32)>> = BTreeSet::new();
    for (key, _) in keyed_terms(&p0) {
        keys.insert(key);
    }
    for col in &columns {
        for (key, _) in keyed_terms(col) {
            keys.insert(key);
        }
    }
    let row_of: BTreeMap<&Vec<(String, u32)>, usize> = keys.iter().zip(0..).collect();
    let mut a = vec![vec![Rat::zero(); columns.len()]; keys.len()];
    let mut b = vec![Rat::zero(); keys.len()];
    for (key, c) in keyed_terms(&p0) {
        b[row_of[&key]] = c;
    }
    for (j, col) in columns.iter().enumerate() {
        for (key, c) in keyed_terms(col) {
            a[row_of[&key]][j] = c;
        }
    }
    let Some(solution) = linalg::solve_rat(a, b) else {
        return Ok(None);
    };

    let d_poly = expand(&d_set);
    let mut rs = Vec::with_capacity(ks.len());
    for chunk in solution.chunks(monos.len()) {
        let mut num = MultiPoly::zero();
        for (mono, c) in monos.iter().zip(chunk) {
            if !c.is_zero() {
                num.add_assign_poly(&monomial_poly(vars, mono).mul_rat(c));
            }
        }
        rs.push(RatFunc::new(num, d_poly.clone())?);
    }
    let cert = MultiCert::forward(rs);
    let check = verify_multi(f, n, ks, &cert)?;
    Ok(check.holds.then_some(cert))
}
