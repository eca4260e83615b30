//! Outward-rounded intervals with dyadic endpoints `m * 2^e`, `m` a `BigInt`.
//!
//! Used to decide the sign of deep log-concavity iterates whose exact values
//! run to billions of bits. Every operation encloses the exact result: lower
//! endpoints are rounded toward negative infinity and upper endpoints toward
//! positive infinity, each to `precision` significant bits. A precision of 0
//! means no rounding at all.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::Zero;

use crate::scalar::{LScalar, SignInfo};

/// The exact value `mant * 2^exp`. Equality and ordering compare values.
#[derive(Debug, Clone)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(v: BigInt) -> Self {
        Dyadic { mant: v, exp: 0 }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    // Both mantissas scaled to the smaller exponent.
    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        match self.exp.cmp(&other.exp) {
            Ordering::Equal => (self.mant.clone(), other.mant.clone(), self.exp),
            Ordering::Less => (
                self.mant.clone(),
                &other.mant << (other.exp - self.exp) as usize,
                self.exp,
            ),
            Ordering::Greater => (
                &self.mant << (self.exp - other.exp) as usize,
                other.mant.clone(),
                other.exp,
            ),
        }
    }

    fn add_exact(&self, other: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(other);
        Dyadic { mant: a + b, exp }
    }

    fn sub_exact(&self, other: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(other);
        Dyadic { mant: a - b, exp }
    }

    fn mul_exact(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    fn excess_bits(&self, precision: u32) -> Option<u64> {
        let bits = self.mant.bits();
        (precision > 0 && bits > precision as u64).then(|| bits - precision as u64)
    }

    /// Largest dyadic with `precision` bits that is `<= self`.
    pub fn round_down(self, precision: u32) -> Dyadic {
        match self.excess_bits(precision) {
            // BigInt's right shift rounds toward negative infinity
            Some(s) => Dyadic {
                mant: self.mant >> s as usize,
                exp: self.exp + s as i64,
            },
            None => self,
        }
    }

    /// Smallest dyadic with `precision` bits that is `>= self`.
    pub fn round_up(self, precision: u32) -> Dyadic {
        match self.excess_bits(precision) {
            Some(s) => Dyadic {
                mant: -((-self.mant) >> s as usize),
                exp: self.exp + s as i64,
            },
            None => self,
        }
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 {
            write!(f, "{}", &self.mant << self.exp as usize)
        } else {
            write!(f, "{}*2^{}", self.mant, self.exp)
        }
    }
}

/// A closed interval `[lo, hi]` known to contain some exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    precision: u32,
}

impl Interval {
    /// Enclose the integer `v` at the given precision.
    pub fn from_int(v: &BigInt, precision: u32) -> Self {
        let d = Dyadic::from_int(v.clone());
        Interval {
            lo: d.clone().round_down(precision),
            hi: d.round_up(precision),
            precision,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn contains_int(&self, v: &BigInt) -> bool {
        let d = Dyadic::from_int(v.clone());
        self.lo <= d && d <= self.hi
    }

    /// Bits of headroom left: how far apart the endpoints are relative to
    /// their magnitude, in bits. `None` for an interval touching zero.
    pub fn relative_width_bits(&self) -> Option<i64> {
        if self.lo.sign() != self.hi.sign() || self.lo.sign() == Sign::NoSign {
            return None;
        }
        let width = self.hi.sub_exact(&self.lo);
        if width.mant.is_zero() {
            return Some(i64::MAX);
        }
        let mag = |d: &Dyadic| d.mant.bits() as i64 + d.exp;
        Some(mag(&self.lo).min(mag(&self.hi)) - mag(&width))
    }

    fn joint_precision(&self, other: &Interval) -> u32 {
        match (self.precision, other.precision) {
            (0, p) | (p, 0) => p,
            (a, b) => a.max(b),
        }
    }

    fn rounded(lo: Dyadic, hi: Dyadic, precision: u32) -> Interval {
        Interval {
            lo: lo.round_down(precision),
            hi: hi.round_up(precision),
            precision,
        }
    }
}

impl Zero for Interval {
    fn zero() -> Self {
        Interval {
            lo: Dyadic::zero(),
            hi: Dyadic::zero(),
            precision: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.lo.mant.is_zero() && self.hi.mant.is_zero()
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        let p = self.joint_precision(&rhs);
        Interval::rounded(self.lo.add_exact(&rhs.lo), self.hi.add_exact(&rhs.hi), p)
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        let p = self.joint_precision(&rhs);
        Interval::rounded(self.lo.sub_exact(&rhs.hi), self.hi.sub_exact(&rhs.lo), p)
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let p = self.joint_precision(&rhs);
        let nonneg = |i: &Interval| i.lo.sign() != Sign::Minus;
        if nonneg(&self) && nonneg(&rhs) {
            return Interval::rounded(self.lo.mul_exact(&rhs.lo), self.hi.mul_exact(&rhs.hi), p);
        }
        let products = [
            self.lo.mul_exact(&rhs.lo),
            self.lo.mul_exact(&rhs.hi),
            self.hi.mul_exact(&rhs.lo),
            self.hi.mul_exact(&rhs.hi),
        ];
        let lo = products.iter().min().cloned().expect("four products");
        let hi = products.iter().max().cloned().expect("four products");
        Interval::rounded(lo, hi, p)
    }
}

impl LScalar for Interval {
    fn sign_info(&self) -> SignInfo {
        match (self.lo.sign(), self.hi.sign()) {
            (Sign::Plus, _) => SignInfo::Positive,
            (Sign::NoSign, Sign::NoSign) => SignInfo::Zero,
            (Sign::NoSign, _) => SignInfo::NonNegative,
            (_, Sign::Minus) => SignInfo::Negative,
            _ => SignInfo::Unknown,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: i64, p: u32) -> Interval {
        Interval::from_int(&BigInt::from(v), p)
    }

    #[test]
    fn shift_rounds_toward_negative_infinity() {
        assert_eq!(BigInt::from(-5) >> 1usize, BigInt::from(-3));
        assert_eq!(BigInt::from(5) >> 1usize, BigInt::from(2));
    }

    #[test]
    fn rounding_encloses() {
        let d = Dyadic::from_int(BigInt::from(1023));
        let down = d.clone().round_down(4);
        let up = d.clone().round_up(4);
        assert_eq!(
            (down.mantissa().clone(), down.exponent()),
            (BigInt::from(15), 6)
        );
        assert_eq!(
            (up.mantissa().clone(), up.exponent()),
            (BigInt::from(16), 6)
        );
        let neg = Dyadic::from_int(BigInt::from(-1023));
        assert!(neg.clone().round_down(4) <= neg && neg <= neg.clone().round_up(4));
    }

    #[test]
    fn exact_without_rounding() {
        let a = iv(11, 0);
        let b = iv(9, 0);
        let c = iv(7, 0);
        let r = a.clone() * a - b * c;
        assert_eq!(r, iv(58, 0));
        assert_eq!(r.sign_info(), SignInfo::Positive);
        assert_eq!(r.to_string(), "58");
    }

    #[test]
    fn signs() {
        let straddle = iv(3, 0) - iv(5, 0)
            + Interval {
                lo: Dyadic::zero(),
                hi: Dyadic::from_int(4.into()),
                precision: 0,
            };
        assert_eq!(straddle.sign_info(), SignInfo::Unknown);
        assert_eq!((iv(2, 0) - iv(5, 0)).sign_info(), SignInfo::Negative);
        assert_eq!(Interval::zero().sign_info(), SignInfo::Zero);
    }

    #[test]
    fn mixed_sign_product() {
        let a = Interval {
            lo: Dyadic::from_int((-2).into()),
            hi: Dyadic::from_int(3.into()),
            precision: 0,
        };
        let b = Interval {
            lo: Dyadic::from_int((-5).into()),
            hi: Dyadic::from_int(1.into()),
            precision: 0,
        };
        let p = a * b;
        assert_eq!(p.lo().to_string(), "-15");
        assert_eq!(p.hi().to_string(), "10");
    }
}
