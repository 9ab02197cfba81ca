//! Exact integer and rational linear algebra.

mod linear;
mod matrix;
mod sparse;

pub use linear::{feasible_point, rational_rank, solve_affine, AffineSolution};
pub use matrix::{hnf, integer_kernel, snf, IntMatrix, Smith};
pub use sparse::{SparseIntMatrix, SparseSmith};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Arbitrary precision rational, always normalised to lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `<alpha, x>` for an integer vector and a rational point.
pub fn dot_int(alpha: &[i64], x: &[Rational]) -> Rational {
    debug_assert_eq!(alpha.len(), x.len());
    alpha
        .iter()
        .zip(x)
        .filter(|(a, _)| **a != 0)
        .fold(Rational::zero(), |acc, (a, xi)| acc + xi * BigInt::from(*a))
}

/// Floor of a rational as a machine integer.
pub fn floor_i64(q: &Rational) -> i64 {
    let f = q.numer().div_floor(q.denom());
    i64::try_from(f).expect("coordinate does not fit in i64")
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
