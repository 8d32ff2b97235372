//! Exact arithmetic: modular helpers, Hirzebruch-Jung continued fractions and
//! the cyclotomic field of p-th roots of unity.

pub mod cyclotomic;
pub mod hj;
pub mod modular;

use num_bigint::BigInt;
use thiserror::Error;

pub use cyclotomic::{cyc_inv, cyc_mul, CyclotomicNumber};
pub use hj::{continued_fraction, evaluate_continued_fraction, singularity_invariants, SingularityInvariants};
pub use modular::{gcd, mod_inverse, modulo};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `value` as a rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_integer(value: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if value.is_integer() {
        value.to_integer().to_i64()
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i64, modulus: i64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(i64),
    #[error("1/{order}(1,{q}) is not a valid cyclic quotient singularity type")]
    InvalidSingularity { order: i64, q: i64 },
    #[error("inverse of zero in the cyclotomic field")]
    ZeroInverse,
    #[error("cyclotomic operands belong to different fields (p = {0} and p = {1})")]
    FieldMismatch(i64, i64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("root of unity of order {order} is not available in the field of {p}-th roots")]
    UnsupportedRoot { order: i64, p: i64 },
}
