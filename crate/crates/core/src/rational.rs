//! Exact rational scalars used throughout the crate.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational number. Always held in lowest terms with a
/// positive denominator (guaranteed by `num-rational`).
pub type Rational = BigRational;

/// Shorthand constructor for a rational from machine integers.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}
