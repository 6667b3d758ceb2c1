//! Binomials, harmonic numbers, and the Apéry numbers by direct
//! arithmetic.
//!
//! The headline check is the harmonic-weighted sum
//!
//! ```text
//! Σ_{k=1}^{n} k·C(n,k)²·C(n+k,k)²·(1/(2k) + H_{n+k} + H_{n−k} − 2H_k) = 0,
//! ```
//!
//! which vanishes identically although no single summand does.  Evaluating
//! it needs nothing deeper than exact rational arithmetic, so this module
//! computes it literally: harmonic numbers as exact fractions, binomials as
//! exact integers, and the whole sum term by term.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use wz_algebra::Rat;

/// `C(n, k)` as an exact integer; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    // n(n−1)⋯(n−k+1)/k! is an integer, so the single division is exact.
    num / den
}

/// The harmonic number `H_m = 1 + 1/2 + ⋯ + 1/m` as an exact rational,
/// with `H_0 = 0` (and `H_m = 0` for negative `m`, which never arises in
/// the checks but keeps the function total).
pub fn harmonic(m: i64) -> Rat {
    let mut h = Rat::zero();
    for i in 1..=m {
        h += Rat::new(BigInt::one(), BigInt::from(i));
    }
    h
}

/// The Apéry number `A(n) = Σ_{k=0}^{n} C(n,k)²·C(n+k,k)²`.
pub fn apery(n: u32) -> BigInt {
    let n = i64::from(n);
    let mut total = BigInt::zero();
    for k in 0..=n {
        total += binomial(n, k).pow(2) * binomial(n + k, k).pow(2);
    }
    total
}

/// `Σ_{k=1}^{n} k·C(n,k)²·C(n+k,k)²·(1/(2k) + H_{n+k} + H_{n−k} − 2H_k)`,
/// computed with exact harmonic fractions.  Identically zero for every
/// `n ≥ 1`; the caller asserts that, this function just does the sum.
pub fn ahlgren_ono_eval(n: u32) -> Rat {
    let n = i64::from(n);
    // One shared table H_0..H_{2n}, built incrementally.
    let mut h = Vec::with_capacity((2 * n + 1) as usize);
    h.push(Rat::zero());
    for i in 1..=2 * n {
        let prev = h.last().expect("table is never empty").clone();
        h.push(prev + Rat::new(BigInt::one(), BigInt::from(i)));
    }

    let mut total = Rat::zero();
    for k in 1..=n {
        let weight = Rat::from_integer(
            BigInt::from(k) * binomial(n, k).pow(2) * binomial(n + k, k).pow(2),
        );
        let brace = Rat::new(BigInt::one(), BigInt::from(2 * k))
            + h[(n + k) as usize].clone()
            + h[(n - k) as usize].clone()
            - Rat::from_integer(BigInt::from(2)) * h[k as usize].clone();
        total += weight * brace;
    }
    total
}
