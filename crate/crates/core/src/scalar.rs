//! Scalar bounds shared by the table, concavity and verification code.
//!
//! Everything is generic over an exact integer type. `BigInt` is the type the
//! crate is meant to be used with; fixed-width integers (`i64`, `i128`) satisfy
//! the same bound and are handy for small tables, but overflow once the
//! factorials outgrow them (`i128` holds the e-table up to n = 33).

use std::fmt::{Debug, Display};
use std::ops::{Mul, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, Zero};

/// Exact signed integer arithmetic.
pub trait ExactInt:
    Clone + Integer + Signed + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> ExactInt for T where
    T: Clone + Integer + Signed + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Lift a small index-derived value into `T`.
///
/// Panics only if `T` cannot represent `v`, which for the index ranges used
/// in this crate means a fixed-width type was pushed far past its range.
pub fn lift<T: ExactInt>(v: i64) -> T {
    T::from_i64(v).expect("index value does not fit the scalar type")
}

pub fn factorial<T: ExactInt>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * lift::<T>(i as i64))
}

/// What can be said for certain about the sign of a value.
///
/// Exact types always know their sign; interval types may only bound it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignInfo {
    Negative,
    Zero,
    Positive,
    /// Certainly `>= 0`, but zero is not excluded.
    NonNegative,
    /// The value may be on either side of zero.
    Unknown,
}

impl SignInfo {
    pub fn is_nonnegative(self) -> bool {
        matches!(
            self,
            SignInfo::Zero | SignInfo::Positive | SignInfo::NonNegative
        )
    }

    pub fn is_negative(self) -> bool {
        self == SignInfo::Negative
    }
}

/// Ring operations needed by the log-concavity operator plus a sign query.
pub trait LScalar: Clone + Zero + Sub<Output = Self> + Mul<Output = Self> + Display {
    fn sign_info(&self) -> SignInfo;
}

impl<T: ExactInt> LScalar for T {
    fn sign_info(&self) -> SignInfo {
        if self.is_negative() {
            SignInfo::Negative
        } else if self.is_zero() {
            SignInfo::Zero
        } else {
            SignInfo::Positive
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn factorials() {
        assert_eq!(factorial::<i64>(0), 1);
        assert_eq!(factorial::<i64>(5), 120);
        assert_eq!(
            factorial::<BigInt>(25).to_string(),
            "15511210043330985984000000"
        );
    }

    #[test]
    fn exact_sign() {
        assert_eq!((-3i64).sign_info(), SignInfo::Negative);
        assert_eq!(0i64.sign_info(), SignInfo::Zero);
        assert!(BigInt::from(7).sign_info().is_nonnegative());
    }
}
