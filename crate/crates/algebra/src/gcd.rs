//! Multivariate polynomial gcd over ℚ.
//!
//! Classic content / primitive-part recursion: pick the most significant
//! variable, split each input into (content, primitive part) with respect to
//! it, gcd the contents recursively, and run a primitive pseudo-remainder
//! sequence on the primitive parts.  Degrees in this engine are small, so the
//! primitive PRS is plenty fast and keeps coefficients tame.

use crate::error::AlgebraError;
use crate::multipoly::MultiPoly;

/// Canonical gcd: coprime integer coefficients, positive leading coefficient
/// in graded-lex order.  `gcd(0, p)` is the canonical form of `p`;
/// `gcd(0, 0)` is an error.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::GcdOfZero);
    }
    if a.is_zero() {
        return Ok(b.int_primitive().1);
    }
    if b.is_zero() {
        return Ok(a.int_primitive().1);
    }
    let var = match main_var(a, b) {
        None => return Ok(MultiPoly::one()),
        Some(v) => v,
    };

    let cont_a = a.content_in(&var)?;
    let cont_b = b.content_in(&var)?;
    let pp_a = a.exact_div(&cont_a).expect("content divides");
    let pp_b = b.exact_div(&cont_b).expect("content divides");
    let cont_gcd = poly_gcd(&cont_a, &cont_b)?;
    let pp_gcd = primitive_prs(pp_a, pp_b, &var)?;
    let product = &cont_gcd * &pp_gcd;
    Ok(product.int_primitive().1)
}

/// Most significant variable occurring in either polynomial.
fn main_var(a: &MultiPoly, b: &MultiPoly) -> Option<String> {
    let mut best: Option<String> = None;
    for v in a.vars().iter().chain(b.vars().iter()) {
        if a.contains_var(v) || b.contains_var(v) {
            match &best {
                Some(cur) if cur >= v => {}
                _ => best = Some(v.clone()),
            }
        }
    }
    best
}

/// Gcd of two polynomials primitive with respect to `var`, via a pseudo-
/// remainder sequence whose remainders are reduced to primitive parts.
fn primitive_prs(
    mut p: MultiPoly,
    mut q: MultiPoly,
    var: &str,
) -> Result<MultiPoly, AlgebraError> {
    if p.degree_in(var) == 0 || q.degree_in(var) == 0 {
        // Inputs are primitive in `var`, so a var-free common factor is a unit.
        return Ok(MultiPoly::one());
    }
    loop {
        if p.degree_in(var) < q.degree_in(var) {
            std::mem::swap(&mut p, &mut q);
        }
        let r = pseudo_rem(&p, &q, var);
        if r.is_zero() {
            return primitive_wrt(&q, var);
        }
        p = q;
        q = primitive_wrt(&r, var)?;
        if q.degree_in(var) == 0 {
            return Ok(MultiPoly::one());
        }
    }
}

/// Primitive part with respect to `var`, scaled to coprime integer
/// coefficients with positive leading coefficient.
fn primitive_wrt(p: &MultiPoly, var: &str) -> Result<MultiPoly, AlgebraError> {
    let cont = p.content_in(var)?;
    let pp = p.exact_div(&cont).expect("content divides");
    Ok(pp.int_primitive().1)
}

/// Pseudo-remainder of `p` by `q` with respect to `var`: repeatedly clears
/// the leading coefficient by scaling with `lc(q)`.  The result equals
/// `lc(q)^j · p mod q` for some `j`, which is all a primitive PRS needs.
fn pseudo_rem(p: &MultiPoly, q: &MultiPoly, var: &str) -> MultiPoly {
    let dq = q.degree_in(var);
    debug_assert!(dq >= 1);
    let q_coeffs = q.coeffs_in(var);
    let lq = q_coeffs[dq as usize].clone();
    let mut r = p.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var);
        if dr < dq {
            break;
        }
        let r_coeffs = r.coeffs_in(var);
        let lr = r_coeffs[dr as usize].clone();
        // r := lq*r - lr*var^(dr-dq)*q
        let mut shift = MultiPoly::var(var).pow(dr - dq);
        shift = &shift * &lr;
        r = &(&r * &lq) - &(&shift * q);
        debug_assert!(r.degree_in(var) < dr || r.is_zero());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> MultiPoly {
        MultiPoly::var(s)
    }

    #[test]
    fn difference_of_squares() {
        let n = v("n");
        let k = v("k");
        let a = &(&n * &n) - &(&k * &k);
        let b = &n - &k;
        assert_eq!(poly_gcd(&a, &b).unwrap(), b);
    }

    #[test]
    fn coprime_linear_forms() {
        let n = v("n");
        let k = v("k");
        // 2k - n - 1 and 2(n + 1 - k) share no factor.
        let a = &(&k.mul_rat(&crate::rat(2, 1)) - &n) - &MultiPoly::one();
        let b = (&(&n - &k) + &MultiPoly::one()).mul_rat(&crate::rat(2, 1));
        assert_eq!(poly_gcd(&a, &b).unwrap(), MultiPoly::one());
    }

    #[test]
    fn univariate_with_common_factor() {
        let k = v("k");
        let a = &k * &(&k - &MultiPoly::one()); // k(k-1)
        assert_eq!(poly_gcd(&a, &k).unwrap(), k);
    }

    #[test]
    fn zero_cases() {
        let n = v("n");
        let two_n = n.mul_rat(&crate::rat(-2, 1));
        // Canonicalization: -2n -> n.
        assert_eq!(poly_gcd(&MultiPoly::zero(), &two_n).unwrap(), n);
        assert!(poly_gcd(&MultiPoly::zero(), &MultiPoly::zero()).is_err());
    }

    #[test]
    fn gcd_divides_both() {
        let n = v("n");
        let k = v("k");
        let g = &(&n + &k) + &MultiPoly::one();
        let a = &g * &(&n - &k);
        let b = &g * &(&k + &MultiPoly::from_int(3));
        let found = poly_gcd(&a, &b).unwrap();
        assert_eq!(found, g);
        assert!(a.exact_div(&found).is_some());
        assert!(b.exact_div(&found).is_some());
    }

    #[test]
    fn trivariate() {
        let x = v("x");
        let y = v("y");
        let z = v("z");
        let s = &(&x + &y) + &z;
        let a = &s * &(&x - &y);
        let b = &s * &s;
        assert_eq!(poly_gcd(&a, &b).unwrap(), s);
    }
}
