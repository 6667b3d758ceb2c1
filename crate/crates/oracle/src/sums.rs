//! Literal exact summation.
//!
//! A sum is evaluated by visiting every lattice point in the range and
//! adding up `eval_exact` values — exact rationals all the way.  Nothing
//! here knows about telescoping, which is exactly why agreement with a
//! certified evaluation means something.

use std::collections::BTreeMap;

use num_traits::Zero;
use wz_algebra::Rat;
use wz_hyperterm::HyperTerm;

use crate::error::OracleError;

/// The finite `[lo, hi]` window outside which `f` vanishes in `k`, at a
/// point binding every other variable.
///
/// Errors with [`OracleError::UnboundedRange`] when the term's vanishing
/// pattern does not pin down both edges — an infinite sum cannot be done
/// by brute force, and pretending otherwise would silently truncate.
pub fn natural_bounds(
    f: &HyperTerm,
    k: &str,
    point: &BTreeMap<String, Rat>,
) -> Result<(i64, i64), OracleError> {
    f.natural_support(k)?
        .resolve(point)?
        .ok_or_else(|| OracleError::UnboundedRange(k.to_string()))
}

/// `Σ_{k=lo}^{hi} f(k)` with every other variable bound by `point`.
pub fn exact_sum(
    f: &HyperTerm,
    point: &BTreeMap<String, Rat>,
    k: &str,
    lo: i64,
    hi: i64,
) -> Result<Rat, OracleError> {
    let mut at = point.clone();
    let mut total = Rat::zero();
    for v in lo..=hi {
        at.insert(k.to_string(), Rat::from_integer(v.into()));
        total += f.eval_exact(&at)?;
    }
    Ok(total)
}

/// `Σ_k f(k)` over the natural support of `f` in `k`.
pub fn exact_sum_natural(
    f: &HyperTerm,
    point: &BTreeMap<String, Rat>,
    k: &str,
) -> Result<Rat, OracleError> {
    let (lo, hi) = natural_bounds(f, k, point)?;
    exact_sum(f, point, k, lo, hi)
}

/// Exact sum over a rectangular grid: one `(name, lo, hi)` range per
/// summation variable, every remaining variable bound by `point`.
pub fn exact_sum_multi(
    f: &HyperTerm,
    point: &BTreeMap<String, Rat>,
    ranges: &[(&str, i64, i64)],
) -> Result<Rat, OracleError> {
    fn walk(
        f: &HyperTerm,
        at: &mut BTreeMap<String, Rat>,
        ranges: &[(&str, i64, i64)],
        total: &mut Rat,
    ) -> Result<(), OracleError> {
        match ranges.split_first() {
            None => {
                *total += f.eval_exact(at)?;
                Ok(())
            }
            Some((&(k, lo, hi), rest)) => {
                for v in lo..=hi {
                    at.insert(k.to_string(), Rat::from_integer(v.into()));
                    walk(f, at, rest, total)?;
                }
                Ok(())
            }
        }
    }

    let mut at = point.clone();
    let mut total = Rat::zero();
    walk(f, &mut at, ranges, &mut total)?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wz_algebra::rat;
    use wz_hyperterm::LinForm;

    fn lin(coeffs: &[(&str, i64)], c: Rat) -> LinForm {
        LinForm::new(
            coeffs.iter().map(|&(v, a)| (v.to_string(), a)).collect(),
            c,
        )
    }

    fn point(binds: &[(&str, i64)]) -> BTreeMap<String, Rat> {
        binds
            .iter()
            .map(|&(v, x)| (v.to_string(), rat(x, 1)))
            .collect()
    }

    /// C(n, k)
    fn plain_binomial() -> HyperTerm {
        HyperTerm::one()
            .mul_binomial(lin(&[("n", 1)], rat(0, 1)), lin(&[("k", 1)], rat(0, 1)), 1)
            .unwrap()
    }

    #[test]
    fn row_sums_of_pascals_triangle() {
        let f = plain_binomial();
        let got = exact_sum(&f, &point(&[("n", 3)]), "k", 0, 3).unwrap();
        assert_eq!(got, rat(8, 1));
        let got = exact_sum_natural(&f, &point(&[("n", 10)]), "k").unwrap();
        assert_eq!(got, rat(1024, 1));
    }

    #[test]
    fn natural_bounds_track_the_binomial_window() {
        let f = plain_binomial();
        assert_eq!(natural_bounds(&f, "k", &point(&[("n", 7)])).unwrap(), (0, 7));
    }

    #[test]
    fn summing_outside_the_support_adds_nothing() {
        let f = plain_binomial();
        let wide = exact_sum(&f, &point(&[("n", 4)]), "k", -3, 9).unwrap();
        assert_eq!(wide, rat(16, 1));
    }

    #[test]
    fn unbounded_ranges_are_refused() {
        // 2^k vanishes nowhere, so its natural support has no edges.
        let f = HyperTerm::one()
            .mul_power(
                wz_algebra::MultiPoly::from_int(2),
                lin(&[("k", 1)], rat(0, 1)),
                1,
            )
            .unwrap();
        let err = exact_sum_natural(&f, &point(&[]), "k").unwrap_err();
        assert!(matches!(err, OracleError::UnboundedRange(ref v) if v == "k"));
    }

    #[test]
    fn terminating_alternating_series_sums_to_three_halves() {
        // (−1)^k (4k+1) (1/2)_k² (−n)_k / (k!² (3/2+n)_k) at n = 1:
        // the k = 0 and k = 1 terms are 1 and 1/2, and (−1)_k kills the rest.
        let k1 = lin(&[("k", 1)], rat(0, 1));
        let f = HyperTerm::one()
            .mul_sign(k1.clone())
            .unwrap()
            .mul_poly(
                &(&wz_algebra::MultiPoly::var("k") * &wz_algebra::MultiPoly::from_int(4))
                    + &wz_algebra::MultiPoly::from_int(1),
                1,
            )
            .unwrap()
            .mul_pochhammer(lin(&[], rat(1, 2)), k1.clone(), 2)
            .unwrap()
            .mul_pochhammer(lin(&[("n", -1)], rat(0, 1)), k1.clone(), 1)
            .unwrap()
            .mul_factorial(k1.clone(), -2)
            .unwrap()
            .mul_pochhammer(lin(&[("n", 1)], rat(3, 2)), k1, -1)
            .unwrap();
        let got = exact_sum(&f, &point(&[("n", 1)]), "k", 0, 5).unwrap();
        assert_eq!(got, rat(3, 2));
    }

    #[test]
    fn grid_sums_cover_every_lattice_point() {
        // Σ_{k1,k2} C(n,k1)·C(n,k2) over the n = 2 box is (Σ C(2,k))² = 16.
        let f = HyperTerm::one()
            .mul_binomial(lin(&[("n", 1)], rat(0, 1)), lin(&[("k1", 1)], rat(0, 1)), 1)
            .unwrap()
            .mul_binomial(lin(&[("n", 1)], rat(0, 1)), lin(&[("k2", 1)], rat(0, 1)), 1)
            .unwrap();
        let got = exact_sum_multi(
            &f,
            &point(&[("n", 2)]),
            &[("k1", 0, 2), ("k2", 0, 2)],
        )
        .unwrap();
        assert_eq!(got, rat(16, 1));
    }
}
