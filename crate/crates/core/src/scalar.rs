//! Coefficient scalars.
//!
//! The series kernel is generic over any field-like scalar satisfying
//! [`Coeff`]; the rest of the crate pins the exact-rational alias
//! [`crate::Rat`]. Exactness is load-bearing: every acceptance check is a
//! rational equality with zero tolerance.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::traits::{FromPrimitive, One, Signed, Zero};
use num::BigRational;

/// Minimal bounds for series coefficients: a commutative field of
/// characteristic zero with an injection of the integers.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer does not embed into the scalar type")
    }
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + FromPrimitive
{
}

/// Scalars supporting an exact square root, when one exists.
pub trait CoeffSqrt: Coeff {
    /// Returns `s` with `s * s == self` and `s >= 0`, or `None` if no such
    /// scalar exists exactly.
    fn exact_sqrt(&self) -> Option<Self>;
}

impl CoeffSqrt for BigRational {
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &(&ns * &ns) == self.numer() && &(&ds * &ds) == self.denom() {
            Some(BigRational::new(ns, ds))
        } else {
            None
        }
    }
}

/// Exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact integer rational.
pub fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Integer power of a rational, exact for negative exponents too.
pub fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    let e = i32::try_from(exp).expect("exponent out of i32 range");
    base.pow(e)
}

/// Binomial coefficient C(n, k) as a rational, zero for k > n or k < 0.
pub fn binomial(n: i64, k: i64) -> BigRational {
    if k < 0 || k > n {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    BigRational::new(num, den)
}
