use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator by `num-rational` itself.
pub type Rat = BigRational;

/// Shorthand constructor: `rat(1, 2)` is 1/2.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Shorthand constructor for integer rationals.
pub fn int(n: i64) -> Rat {
    Rat::from(Int::from(n))
}
