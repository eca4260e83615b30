//! The log-concavity operator `L{a}_k = a_k^2 - a_{k-1} a_{k+1}` and the
//! property checks built on it.
//!
//! A finite sequence has no neighbours past its ends, so the operator needs a
//! boundary convention. [`Convention::Shrink`] only evaluates indices with
//! both neighbours present, trimming one index from each end per application.
//! [`Convention::ZeroPad`] treats the missing neighbours as zero and keeps the
//! index range. The two can disagree: the row `9, 11, 7, 3, 1` is 2-fold
//! log-concave under `Shrink` but not under `ZeroPad`.

use std::fmt;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::scalar::{lift, ExactInt, LScalar};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcavityError {
    #[error("a sequence needs at least one value")]
    EmptySequence,
    #[error("shrink convention needs at least 3 values, got {len}")]
    EmptyInterior { len: usize },
    #[error("ultra/reverse-ultra checks need a row indexed from 0, got start {start}")]
    BadIndexing { start: i64 },
    #[error("log-concavity depth must be at least 1")]
    InvalidDepth,
}

/// A finite run of values `a_start, a_{start+1}, ..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence<T> {
    start: i64,
    values: Vec<T>,
}

impl<T> Sequence<T> {
    pub fn new(start: i64, values: Vec<T>) -> Result<Self, ConcavityError> {
        if values.is_empty() {
            return Err(ConcavityError::EmptySequence);
        }
        Ok(Sequence { start, values })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Index of the last value.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, index: i64) -> Option<&T> {
        if index < self.start {
            return None;
        }
        self.values.get((index - self.start) as usize)
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, &T)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.start + i as i64, v))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Sequence<U> {
        Sequence {
            start: self.start,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Sequence<T> {
    /// A table row `a_0..a_n`.
    pub fn from_row(row: &[T]) -> Result<Self, ConcavityError> {
        Sequence::new(0, row.to_vec())
    }
}

impl<T: fmt::Display> fmt::Display for Sequence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{} [", self.start)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Shrink,
    ZeroPad,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Shrink => "shrink",
            Convention::ZeroPad => "pad",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    LogConcave,
    /// Every iterate `L^1 .. L^l` is entrywise nonnegative.
    LLogConcave(usize),
    /// `k(n-k) a_k^2 - (n-k+1)(k+1) a_{k-1} a_{k+1} >= 0` for `1 <= k <= n-1`.
    Ultra,
    /// The same expression `<= 0`.
    ReverseUltra,
}

impl Property {
    pub fn claim(self) -> &'static str {
        match self {
            Property::LogConcave => "log-concave",
            Property::LLogConcave(_) => "l-log-concave",
            Property::Ultra => "ultra-log-concave",
            Property::ReverseUltra => "reverse-ultra-log-concave",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::LogConcave => f.write_str("logconcave"),
            Property::LLogConcave(l) => write!(f, "llogconcave:{l}"),
            Property::Ultra => f.write_str("ultra"),
            Property::ReverseUltra => f.write_str("reverse-ultra"),
        }
    }
}

/// One application of the operator.
pub fn l_operator<T: LScalar>(
    seq: &Sequence<T>,
    conv: Convention,
) -> Result<Sequence<T>, ConcavityError> {
    let v = &seq.values;
    match conv {
        Convention::Shrink => {
            if v.len() < 3 {
                return Err(ConcavityError::EmptyInterior { len: v.len() });
            }
            let values = v
                .windows(3)
                .map(|w| w[1].clone() * w[1].clone() - w[0].clone() * w[2].clone())
                .collect();
            Ok(Sequence {
                start: seq.start + 1,
                values,
            })
        }
        Convention::ZeroPad => {
            let len = v.len();
            let values = (0..len)
                .map(|i| {
                    let sq = v[i].clone() * v[i].clone();
                    if i == 0 || i + 1 == len {
                        // a missing neighbour zeroes the product
                        sq
                    } else {
                        sq - v[i - 1].clone() * v[i + 1].clone()
                    }
                })
                .collect();
            Ok(Sequence {
                start: seq.start,
                values,
            })
        }
    }
}

pub fn check_property<T: ExactInt>(
    seq: &Sequence<T>,
    property: Property,
    conv: Convention,
) -> Result<Verdict, ConcavityError> {
    check_property_within(seq, property, conv, None)
}

/// [`check_property`] restricted to the indices in `window` (the checks at
/// those indices still read neighbours outside it).
pub fn check_property_within<T: ExactInt>(
    seq: &Sequence<T>,
    property: Property,
    conv: Convention,
    window: Option<&RangeInclusive<i64>>,
) -> Result<Verdict, ConcavityError> {
    let wanted = |k: i64| window.is_none_or(|w| w.contains(&k));
    let mut verdict = Verdict::new();
    verdict.apply(property.claim());
    match property {
        Property::LogConcave => {
            let zero = T::zero();
            for (k, a) in seq.indexed() {
                let (prev, next) = (seq.get(k - 1), seq.get(k + 1));
                let interior = prev.is_some() && next.is_some();
                if !wanted(k) || (!interior && conv == Convention::Shrink) {
                    continue;
                }
                let lhs = a.clone() * a.clone();
                let rhs = prev.unwrap_or(&zero).clone() * next.unwrap_or(&zero).clone();
                verdict.record(property.claim(), k, lhs >= rhs, &lhs, &rhs);
            }
        }
        Property::LLogConcave(l) => {
            if l == 0 {
                return Err(ConcavityError::InvalidDepth);
            }
            let mut cur = seq.clone();
            for depth in 1..=l {
                if conv == Convention::Shrink && cur.len() < 3 {
                    break;
                }
                cur = l_operator(&cur, conv)?;
                let before = verdict.violations.len();
                for (k, b) in cur.indexed() {
                    if wanted(k) {
                        verdict.record(property.claim(), k, !b.is_negative(), b, 0);
                    }
                }
                if verdict.violations.len() > before {
                    for v in &mut verdict.violations[before..] {
                        v.depth = Some(depth);
                    }
                    break;
                }
            }
        }
        Property::Ultra | Property::ReverseUltra => {
            if seq.start != 0 {
                return Err(ConcavityError::BadIndexing { start: seq.start });
            }
            let n = seq.len() as i64 - 1;
            let a = &seq.values;
            for k in 1..n {
                if !wanted(k) {
                    continue;
                }
                let expr = ultra_expression(a, n, k);
                let ok = match property {
                    Property::Ultra => !expr.is_negative(),
                    _ => !expr.is_positive(),
                };
                verdict.record(property.claim(), k, ok, &expr, 0);
            }
        }
    }
    Ok(verdict)
}

/// `k(n-k) a_k^2 - (n-k+1)(k+1) a_{k-1} a_{k+1}` on a row `a_0..a_n`.
pub fn ultra_expression<T: ExactInt>(a: &[T], n: i64, k: i64) -> T {
    let ku = k as usize;
    lift::<T>(k * (n - k)) * a[ku].clone() * a[ku].clone()
        - lift::<T>((n - k + 1) * (k + 1)) * a[ku - 1].clone() * a[ku + 1].clone()
}
