//! Verifies that a claimed certificate proves an identity.
//!
//! For a normalized summand `F(n,k)` (right-hand side divided out, so the
//! claim is `Σ_k F(n,k) = 1`), a certificate is a rational function
//! `R(n,k)` defining the mate `G = R·F`.  The proof has three parts:
//!
//! 1. **Rational identity** — dividing the telescoping equation by `F`
//!    turns it into an identity of rational functions.  Under the default
//!    orientation this is `r1 − 1 = R(n,k+1)·r2 − R(n,k)` with
//!    `r1 = F(n+1,k)/F(n,k)` and `r2 = F(n,k+1)/F(n,k)`; checking it is
//!    exact polynomial arithmetic, no sampling.
//! 2. **Boundary vanishing** — the mate, multiplied into closed product
//!    form, has bounded support in `k`, so summing the telescoping
//!    equation over all integers collapses the right side to zero.
//! 3. **Base case** — `a(n0) = Σ_k F(n0,k) = 1` exactly; induction via the
//!    telescoped difference `a(n+1) − a(n) = 0` finishes the proof.
//!
//! Published certificates differ in which `k`-difference the mate enters
//! with and in the mate's sign, so four orientation tags are supported and
//! tried automatically for externally supplied certificates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use wz_algebra::{MultiPoly, Rat, RatFunc};
use wz_hyperterm::{mate_closed_form, HyperError, HyperTerm, Identity, SumRange};

use crate::error::EngineError;
use crate::telescoper::Recurrence;

/// How the mate enters the telescoping equation.
///
/// With `ΔF = F(n+1,k) − F(n,k)` the four readings are
///
/// ```text
/// ForwardMate      ΔF =  G(n,k+1) − G(n,k)
/// NegatedForward   ΔF = −(G(n,k+1) − G(n,k))
/// BackwardMate     ΔF =  G(n,k) − G(n,k−1)
/// NegatedBackward  ΔF = −(G(n,k) − G(n,k−1))
/// ```
///
/// all with `G = R·F`.  A sum over all of `k` telescopes to zero in every
/// orientation, so each yields a complete proof; they differ only in the
/// bookkeeping of the printed certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    ForwardMate,
    NegatedForward,
    BackwardMate,
    NegatedBackward,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::ForwardMate,
        Convention::NegatedForward,
        Convention::BackwardMate,
        Convention::NegatedBackward,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Convention::ForwardMate => "forward-mate",
            Convention::NegatedForward => "negated-forward",
            Convention::BackwardMate => "backward-mate",
            Convention::NegatedBackward => "negated-backward",
        }
    }

    pub fn from_label(s: &str) -> Option<Convention> {
        Convention::ALL.into_iter().find(|c| c.label() == s)
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A rational certificate: one `R` per summation variable (a single entry
/// for ordinary sums) plus the orientation it claims to verify under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub rs: Vec<RatFunc>,
    pub convention: Convention,
}

impl Certificate {
    pub fn single(r: RatFunc) -> Self {
        Certificate {
            rs: vec![r],
            convention: Convention::ForwardMate,
        }
    }

    pub fn with_convention(r: RatFunc, convention: Convention) -> Self {
        Certificate {
            rs: vec![r],
            convention,
        }
    }

    /// The certificate of a single sum.
    pub fn r(&self) -> &RatFunc {
        &self.rs[0]
    }
}

/// Result of the symbolic rational-identity check: the residual is the
/// numerator of `lhs − rhs` after clearing denominators, zero iff the
/// identity holds.
#[derive(Debug, Clone)]
pub struct WzCheck {
    pub holds: bool,
    pub residual: MultiPoly,
}

/// The orientation-dependent right-hand side `r1 − 1` must equal.
pub(crate) fn convention_rhs(r: &RatFunc, r2: &RatFunc, conv: Convention, k: &str) -> RatFunc {
    match conv {
        Convention::ForwardMate => &(&r.shift_var(k, 1) * r2) - r,
        Convention::NegatedForward => r - &(&r.shift_var(k, 1) * r2),
        Convention::BackwardMate => r - &(&r.shift_var(k, -1) / &r2.shift_var(k, -1)),
        Convention::NegatedBackward => &(&r.shift_var(k, -1) / &r2.shift_var(k, -1)) - r,
    }
}

/// Checks the cleared-denominator identity `r1 − 1 = Δ_k(R·F)/F` under the
/// certificate's orientation.  `f` must be normalized (rhs divided out)
/// with a single summation variable `k`.
pub fn verify_wz_rational(
    f: &HyperTerm,
    n: &str,
    k: &str,
    cert: &Certificate,
) -> Result<WzCheck, EngineError> {
    let r1 = f.shift_quotient(n)?;
    let r2 = f.shift_quotient(k)?;
    let lhs = &r1 - &RatFunc::one();
    let rhs = convention_rhs(cert.r(), &r2, cert.convention, k);
    let diff = &lhs - &rhs;
    Ok(WzCheck {
        holds: diff.is_zero(),
        residual: diff.num().clone(),
    })
}

/// Tries all four orientations in declaration order and reports the first
/// that verifies, if any.
pub fn match_convention(
    f: &HyperTerm,
    n: &str,
    k: &str,
    r: &RatFunc,
) -> Result<Option<Convention>, EngineError> {
    for conv in Convention::ALL {
        let cert = Certificate::with_convention(r.clone(), conv);
        if verify_wz_rational(f, n, k, &cert)?.holds {
            return Ok(Some(conv));
        }
    }
    Ok(None)
}

/// Evidence for the support/boundary and base-case parts of the proof.
#[derive(Debug, Clone)]
pub struct SupportBaseReport {
    pub boundary_ok: bool,
    pub boundary_evidence: String,
    pub base_ok: bool,
    pub base_index: i64,
    pub base_value: Rat,
}

/// How many consecutive `n` values boundary vanishing is confirmed at, and
/// how far past each window edge the evaluations reach.
const BOUNDARY_ROWS: i64 = 8;
const FRINGE_WIDTH: i64 = 3;

fn point_n(n: &str, nv: i64) -> BTreeMap<String, Rat> {
    let mut p = BTreeMap::new();
    p.insert(n.to_string(), Rat::from_integer(nv.into()));
    p
}

fn eval_at(t: &HyperTerm, n: &str, nv: i64, k: &str, kv: i64) -> Result<Rat, HyperError> {
    let mut p = point_n(n, nv);
    p.insert(k.to_string(), Rat::from_integer(kv.into()));
    t.eval_exact(&p)
}

fn explicit_window(
    lo: &wz_hyperterm::LinForm,
    hi: &wz_hyperterm::LinForm,
    point: &BTreeMap<String, Rat>,
) -> Result<(i64, i64), EngineError> {
    let lo = lo.eval(point)?;
    let hi = hi.eval(point)?;
    let to_int = |x: &Rat, which: &str| -> Result<i64, EngineError> {
        if !x.is_integer() {
            return Err(EngineError::Unsupported(format!(
                "explicit {which} bound {x} is not an integer"
            )));
        }
        i64::try_from(x.to_integer())
            .map_err(|_| EngineError::Unsupported(format!("{which} bound {x} out of range")))
    };
    Ok((to_int(&lo, "lower")?, to_int(&hi, "upper")?))
}

/// Establishes that the mate `G = R·F` vanishes beyond the summation range
/// and that the base-case sum at `n0` equals 1.
///
/// `G` is built in closed product form by absorbing `R` into `F` at the
/// atom level — never evaluated as `R×F` pointwise, since `R` has poles
/// exactly where `F` vanishes.  Its own support bounds then prove the
/// vanishing symbolically; exact evaluation at the window fringes for
/// `n = n0..n0+8` confirms it concretely.
pub fn verify_support_and_base(
    f: &HyperTerm,
    n: &str,
    k: &str,
    cert: &Certificate,
    n0: i64,
    range: &SumRange,
) -> Result<SupportBaseReport, EngineError> {
    let mate = if cert.r().is_zero() {
        None
    } else {
        Some(mate_closed_form(f, cert.r())?)
    };

    let mut boundary_ok = true;
    let mut boundary_evidence;
    match (&mate, range) {
        (None, _) => {
            boundary_evidence = "certificate is zero; the mate vanishes identically".to_string();
        }
        (Some(g), SumRange::NaturalSupport) => {
            let sg = g.natural_support(k)?;
            let sf = f.natural_support(k)?;
            if !sg.is_bounded() || !sf.is_bounded() {
                boundary_ok = false;
                boundary_evidence =
                    "support unbounded: requires analytic tail bound, out of scope".to_string();
            } else {
                boundary_evidence = format!(
                    "mate vanishes at both window fringes (width {FRINGE_WIDTH}) for n = {n0}..{}",
                    n0 + BOUNDARY_ROWS
                );
                'rows: for nv in n0..=n0 + BOUNDARY_ROWS {
                    let p = point_n(n, nv);
                    let Some((glo, ghi)) = sg.resolve(&p)? else {
                        boundary_ok = false;
                        boundary_evidence =
                            format!("mate support window unresolved at n = {nv}");
                        break 'rows;
                    };
                    let fringe = (glo - FRINGE_WIDTH..glo).chain(ghi + 1..=ghi + FRINGE_WIDTH);
                    for kv in fringe {
                        match eval_at(g, n, nv, k, kv) {
                            Ok(v) if v.is_zero() => {}
                            Ok(v) => {
                                boundary_ok = false;
                                boundary_evidence = format!(
                                    "mate is {v} ≠ 0 at (n,{k}) = ({nv},{kv}) outside its window"
                                );
                                break 'rows;
                            }
                            Err(e) => {
                                boundary_ok = false;
                                boundary_evidence = format!(
                                    "mate evaluation failed at (n,{k}) = ({nv},{kv}): {e}"
                                );
                                break 'rows;
                            }
                        }
                    }
                }
            }
        }
        (Some(g), SumRange::Explicit(lo, hi)) => {
            // Telescoping over an explicit window [lo, hi] leaves
            // G(hi+1) − G(lo); both endpoint values must vanish.
            boundary_evidence = format!(
                "mate vanishes at the window endpoints for n = {n0}..{}",
                n0 + BOUNDARY_ROWS
            );
            'rows2: for nv in n0..=n0 + BOUNDARY_ROWS {
                let p = point_n(n, nv);
                let (wlo, whi) = explicit_window(lo, hi, &p)?;
                for kv in [wlo, whi + 1] {
                    match eval_at(g, n, nv, k, kv) {
                        Ok(v) if v.is_zero() => {}
                        Ok(v) => {
                            boundary_ok = false;
                            boundary_evidence = format!(
                                "mate is {v} ≠ 0 at the window endpoint (n,{k}) = ({nv},{kv})"
                            );
                            break 'rows2;
                        }
                        Err(e) => {
                            boundary_ok = false;
                            boundary_evidence =
                                format!("mate evaluation failed at (n,{k}) = ({nv},{kv}): {e}");
                            break 'rows2;
                        }
                    }
                }
            }
        }
    }

    let base_value = base_sum(f, n, k, n0, range)?;
    let base_ok = base_value.is_one();
    Ok(SupportBaseReport {
        boundary_ok,
        boundary_evidence,
        base_ok,
        base_index: n0,
        base_value,
    })
}

/// The exact sum `Σ_k F(n0, k)` over the resolved window.
fn base_sum(
    f: &HyperTerm,
    n: &str,
    k: &str,
    n0: i64,
    range: &SumRange,
) -> Result<Rat, EngineError> {
    let p = point_n(n, n0);
    let (lo, hi) = match range {
        SumRange::Explicit(lo, hi) => explicit_window(lo, hi, &p)?,
        SumRange::NaturalSupport => {
            let s = f.natural_support(k)?;
            match s.resolve(&p)? {
                Some(w) => w,
                None => {
                    return Err(EngineError::Unsupported(format!(
                        "natural support of the summand in {k} is unresolved at {n} = {n0}"
                    )))
                }
            }
        }
    };
    let mut acc = Rat::zero();
    for kv in lo..=hi {
        acc += eval_at(f, n, n0, k, kv)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Proved,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Proved => "proved",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Everything the verdict rests on, in emit-ready form.
#[derive(Debug, Clone)]
pub struct CertReport {
    pub verdict: Verdict,
    pub rational_identity_holds: bool,
    /// Residual of the rational check under the recorded convention
    /// (zero iff it holds).
    pub residual: MultiPoly,
    /// Orientation the certificate actually verified under (the requested
    /// one when nothing verified).
    pub convention: Convention,
    pub convention_requested: Convention,
    pub boundary_ok: bool,
    pub boundary_evidence: String,
    pub base_ok: bool,
    pub base_index: i64,
    pub base_value: Option<Rat>,
    /// `(n, sum value)` witnessing `Σ_k F(n,k) ≠ 1`.
    pub counterexample: Option<(i64, Rat)>,
    pub notes: Vec<String>,
}

/// Runs the complete three-part check for a single-sum identity and a
/// claimed certificate.
///
/// The certificate is first checked under its own orientation; if that
/// fails, the other three are tried and the matching one recorded.  The
/// base index defaults to 0 and advances past evaluation poles (up to 8
/// steps) so identities whose right-hand side degenerates at small `n`
/// still get a base case.
pub fn certify_identity(
    id: &Identity,
    cert: &Certificate,
    base_index: Option<i64>,
) -> Result<CertReport, EngineError> {
    if id.sum_vars().len() != 1 {
        return Err(EngineError::Unsupported(
            "certify_identity handles single sums; use the multi-sum verifier".into(),
        ));
    }
    let k = id.sum_vars()[0].clone();
    let n = id.n_var().to_string();
    let f = id.normalized();
    let range = id.range(&k).clone();

    let mut notes = Vec::new();
    let requested = cert.convention;
    let mut recorded = requested;
    let mut check = verify_wz_rational(&f, &n, &k, cert)?;
    if !check.holds {
        for conv in Convention::ALL.into_iter().filter(|c| *c != requested) {
            let alt = Certificate {
                rs: cert.rs.clone(),
                convention: conv,
            };
            let alt_check = verify_wz_rational(&f, &n, &k, &alt)?;
            if alt_check.holds {
                notes.push(format!(
                    "certificate verifies under the {conv} orientation, not the requested {requested}"
                ));
                recorded = conv;
                check = alt_check;
                break;
            }
        }
    }
    if !check.holds {
        notes.push("rational identity fails under all four orientations".into());
    }

    let effective = Certificate {
        rs: cert.rs.clone(),
        convention: recorded,
    };
    let mut support: Option<SupportBaseReport> = None;
    let start = base_index.unwrap_or(0);
    for n0 in start..start + 8 {
        match verify_support_and_base(&f, &n, &k, &effective, n0, &range) {
            Ok(rep) => {
                if n0 != start {
                    notes.push(format!(
                        "base index advanced to {n} = {n0} past evaluation poles"
                    ));
                }
                support = Some(rep);
                break;
            }
            Err(EngineError::Hyper(HyperError::Pole(_))) => continue,
            Err(e) => return Err(e),
        }
    }

    let (boundary_ok, boundary_evidence, base_ok, base_index, base_value) = match &support {
        Some(rep) => (
            rep.boundary_ok,
            rep.boundary_evidence.clone(),
            rep.base_ok,
            rep.base_index,
            Some(rep.base_value.clone()),
        ),
        None => {
            notes.push("no pole-free base index found in 8 attempts".into());
            (false, "base case unavailable".to_string(), false, start, None)
        }
    };

    let counterexample = match (&support, base_ok) {
        (Some(rep), false) => Some((rep.base_index, rep.base_value.clone())),
        _ => None,
    };
    let verdict = if check.holds && boundary_ok && base_ok {
        Verdict::Proved
    } else if counterexample.is_some() {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    };

    Ok(CertReport {
        verdict,
        rational_identity_holds: check.holds,
        residual: check.residual,
        convention: recorded,
        convention_requested: requested,
        boundary_ok,
        boundary_evidence,
        base_ok,
        base_index,
        base_value,
        counterexample,
        notes,
    })
}

/// Order-`J` generalization of the rational check: with
/// `s_j = F(n+j,k)/F(n,k)` it verifies
///
/// ```text
/// Σ_j σ_j(n)·s_j(n,k) = R(n,k+1)·r2(n,k) − R(n,k)
/// ```
///
/// which, summed over `k`, telescopes to the recurrence
/// `Σ_j σ_j(n)·a(n+j) = 0`.
pub fn verify_recurrence_telescoping(
    f: &HyperTerm,
    n: &str,
    k: &str,
    rec: &Recurrence,
) -> Result<WzCheck, EngineError> {
    let r1 = f.shift_quotient(n)?;
    let r2 = f.shift_quotient(k)?;
    let mut lhs = RatFunc::zero();
    let mut s = RatFunc::one();
    for (j, sigma) in rec.coefficients.iter().enumerate() {
        if !sigma.is_zero() {
            lhs = &lhs + &(&RatFunc::from_poly(sigma.clone()) * &s);
        }
        if j + 1 < rec.coefficients.len() {
            s = &s * &r1.shift_var(n, j as i64);
        }
    }
    let r = &rec.certificate;
    let rhs = &(&r.shift_var(k, 1) * &r2) - r;
    let diff = &lhs - &rhs;
    Ok(WzCheck {
        holds: diff.is_zero(),
        residual: diff.num().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use wz_algebra::rat;
    use wz_hyperterm::LinForm;

    fn lf(n_c: i64, k_c: i64, c: i64) -> LinForm {
        let mut m = BTreeMap::new();
        m.insert("n".to_string(), n_c);
        m.insert("k".to_string(), k_c);
        LinForm::new(m, rat(c, 1))
    }

    /// C(n,k) / 2^n — the normalized binomial summand.
    fn halved_binomial() -> HyperTerm {
        HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), lf(0, 1, 0), 1)
            .unwrap()
            .mul_power(MultiPoly::constant(rat(2, 1)), lf(1, 0, 0), -1)
            .unwrap()
    }

    /// −k / (2(n+1−k)), the certificate that verifies under the default
    /// orientation.
    fn canonical_binomial_cert() -> RatFunc {
        let n = MultiPoly::var("n");
        let k = MultiPoly::var("k");
        let num = -k.clone();
        let den = (&(&n - &k) + &MultiPoly::one()).mul_rat(&rat(2, 1));
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn canonical_certificate_passes_default_orientation() {
        let f = halved_binomial();
        let cert = Certificate::single(canonical_binomial_cert());
        let check = verify_wz_rational(&f, "n", "k", &cert).unwrap();
        assert!(check.holds);
        assert!(check.residual.is_zero());
    }

    #[test]
    fn zero_certificate_fails_with_nonzero_residual() {
        let f = halved_binomial();
        let cert = Certificate::single(RatFunc::zero());
        let check = verify_wz_rational(&f, "n", "k", &cert).unwrap();
        assert!(!check.holds);
        assert!(!check.residual.is_zero());
    }

    /// The certificate printed as k/(2(n−k−1)) does not satisfy any of the
    /// four orientations; its canonical sign/shift variant does.
    #[test]
    fn printed_variant_fails_all_orientations_canonical_passes() {
        let f = halved_binomial();
        let n = MultiPoly::var("n");
        let k = MultiPoly::var("k");
        let printed = RatFunc::new(
            k.clone(),
            (&(&n - &k) - &MultiPoly::one()).mul_rat(&rat(2, 1)),
        )
        .unwrap();
        assert_eq!(match_convention(&f, "n", "k", &printed).unwrap(), None);
        assert_eq!(
            match_convention(&f, "n", "k", &canonical_binomial_cert()).unwrap(),
            Some(Convention::ForwardMate)
        );
    }

    #[test]
    fn negating_the_certificate_matches_the_negated_orientation() {
        let f = halved_binomial();
        let neg = -canonical_binomial_cert();
        assert_eq!(
            match_convention(&f, "n", "k", &neg).unwrap(),
            Some(Convention::NegatedForward)
        );
    }

    #[test]
    fn support_and_base_pass_for_the_binomial_identity() {
        let f = halved_binomial();
        let cert = Certificate::single(canonical_binomial_cert());
        let rep =
            verify_support_and_base(&f, "n", "k", &cert, 0, &SumRange::NaturalSupport).unwrap();
        assert!(rep.boundary_ok, "{}", rep.boundary_evidence);
        assert!(rep.base_ok);
        assert_eq!(rep.base_value, rat(1, 1));
    }

    #[test]
    fn certify_identity_proves_the_binomial_theorem() {
        let summand = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), lf(0, 1, 0), 1)
            .unwrap();
        let rhs = HyperTerm::one()
            .mul_power(MultiPoly::constant(rat(2, 1)), lf(1, 0, 0), 1)
            .unwrap();
        let id = Identity::single(summand, rhs, "n", "k").unwrap();
        let cert = Certificate::single(canonical_binomial_cert());
        let report = certify_identity(&id, &cert, None).unwrap();
        assert_eq!(report.verdict, Verdict::Proved);
        assert!(report.rational_identity_holds);
        assert!(report.boundary_ok);
        assert!(report.base_ok);
        assert_eq!(report.convention, Convention::ForwardMate);
    }

    /// Σ_k C(n,k) = 2·2^n is false; the base case n = 0 gives 1/2.
    #[test]
    fn certify_identity_refutes_a_false_claim() {
        let summand = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), lf(0, 1, 0), 1)
            .unwrap();
        let rhs = HyperTerm::one()
            .mul_rat(rat(2, 1))
            .unwrap()
            .mul_power(MultiPoly::constant(rat(2, 1)), lf(1, 0, 0), 1)
            .unwrap();
        let id = Identity::single(summand, rhs, "n", "k").unwrap();
        let cert = Certificate::single(canonical_binomial_cert());
        let report = certify_identity(&id, &cert, None).unwrap();
        assert_eq!(report.verdict, Verdict::Refuted);
        let (n0, value) = report.counterexample.expect("counterexample recorded");
        assert_eq!(n0, 0);
        assert_eq!(value, rat(1, 2));
    }

    /// A true identity with a wrong certificate is inconclusive, never
    /// refuted: the base case still holds.
    #[test]
    fn wrong_certificate_on_true_identity_is_inconclusive() {
        let summand = HyperTerm::one()
            .mul_binomial(lf(1, 0, 0), lf(0, 1, 0), 1)
            .unwrap();
        let rhs = HyperTerm::one()
            .mul_power(MultiPoly::constant(rat(2, 1)), lf(1, 0, 0), 1)
            .unwrap();
        let id = Identity::single(summand, rhs, "n", "k").unwrap();
        let bogus = Certificate::single(RatFunc::from_poly(MultiPoly::var("k")));
        let report = certify_identity(&id, &bogus, None).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(!report.rational_identity_holds);
        assert!(report.base_ok);
    }
}
