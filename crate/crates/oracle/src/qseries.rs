//! Truncated integer q-series and the eta-product supercongruence.
//!
//! The series of interest is
//!
//! ```text
//! Σ a(n)qⁿ  =  q·∏_{m≥1} (1−q²ᵐ)⁴(1−q⁴ᵐ)⁴  =  q − 4q³ − 2q⁵ + 24q⁷ − ⋯
//! ```
//!
//! and the check is the supercongruence `A((p−1)/2) ≡ a(p) (mod p²)` for odd
//! primes `p`, with `A` the Apéry numbers.  The general statement needs
//! modular-form machinery; each concrete instance needs only integer
//! arithmetic, which is what this module supplies.
//!
//! A [`QSeries`] carries its truncation order explicitly and refuses to
//! answer questions beyond it.  All arithmetic is exact `BigInt` work on
//! coefficients; multiplication truncates, and truncation commutes with
//! products, so the order in which factors are multiplied cannot change any
//! retained coefficient.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::OracleError;
use crate::special::apery;

/// An integer power series in `q` truncated at an explicit order: slot `i`
/// holds the coefficient of `qⁱ` for `0 ≤ i ≤ order`, and nothing beyond
/// the order is represented or readable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The monomial `c·qᵉ`; zero if the exponent is beyond the order.
    pub fn monomial(order: usize, exponent: usize, c: i64) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = BigInt::from(c);
        }
        s
    }

    /// The truncation order.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The coefficient of `qⁱ`, or [`OracleError::Truncated`] when `i` is
    /// beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Result<&BigInt, OracleError> {
        self.coeffs.get(i).ok_or(OracleError::Truncated {
            wanted: i,
            order: self.order(),
        })
    }

    /// The retained coefficients, constant term first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient-wise sum.  Panics if the orders differ: mixing
    /// truncations silently is how wrong tails sneak in.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "truncation orders differ");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        QSeries { coeffs }
    }

    /// Coefficient-wise difference, with the same order discipline.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "truncation orders differ");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        QSeries { coeffs }
    }

    /// Truncated Cauchy product.  Index pairs beyond the order are never
    /// formed, so the product of many factors is independent of the order
    /// they are multiplied in.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order();
        assert_eq!(order, other.order(), "truncation orders differ");
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// `self²` via one truncated product.
    pub fn square(&self) -> Self {
        self.mul(self)
    }
}

/// `q·∏_{m≥1}(1−q²ᵐ)⁴(1−q⁴ᵐ)⁴` truncated at `order`.
///
/// Only factors whose exponent is within the order contribute; each fourth
/// power is computed by squaring twice.
pub fn eta_product(order: usize) -> QSeries {
    let mut series = QSeries::monomial(order, 1, 1);
    for step in [2usize, 4] {
        let mut e = step;
        while e <= order {
            let factor = QSeries::one(order).sub(&QSeries::monomial(order, e, 1));
            series = series.mul(&factor.square().square());
            e += step;
        }
    }
    series
}

/// The two sides of a supercongruence instance, with the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeukersReport {
    pub p: u64,
    /// `A((p−1)/2)` by direct summation.
    pub apery_value: BigInt,
    /// `a(p)`, the coefficient of `qᵖ` in the eta product.
    pub eta_coefficient: BigInt,
    /// Whether `A((p−1)/2) ≡ a(p) (mod p²)`.
    pub congruent: bool,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Checks `A((p−1)/2) ≡ a(p) (mod p²)` for an odd prime `p`, expanding the
/// eta product to `order` terms.
///
/// Errors if `p` is not an odd prime, or if `order < p` — a series too
/// short to contain `a(p)` proves nothing, so the truncation shortfall is
/// reported rather than papered over.
pub fn beukers_check(p: u64, order: usize) -> Result<BeukersReport, OracleError> {
    if !is_odd_prime(p) {
        return Err(OracleError::InvalidInput(format!(
            "p = {p} is not an odd prime"
        )));
    }
    if (p as usize) > order {
        return Err(OracleError::Truncated {
            wanted: p as usize,
            order,
        });
    }
    let eta_coefficient = eta_product(order).coeff(p as usize)?.clone();
    let apery_value = apery(((p - 1) / 2) as u32);
    let p_squared = BigInt::from(p) * BigInt::from(p);
    let congruent = ((&apery_value - &eta_coefficient) % &p_squared).is_zero();
    Ok(BeukersReport {
        p,
        apery_value,
        eta_coefficient,
        congruent,
    })
}
