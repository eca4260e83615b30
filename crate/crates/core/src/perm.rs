//! Brute-force counts of the permutation classes behind the two tables.
//!
//! A permutation `p` of `{1..n}` is counted by `e(n, k)` when it has no fixed
//! point among `k+1..n`, and by `d(n, k)` when additionally `1..k` all lie in
//! different cycles of `p`. Permutations are enumerated in lexicographic order
//! with the in-place successor step, split by first element across threads.

use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::ExactInt;

pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("k = {k} is outside 0..={n}")]
    BadK { n: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermSpec {
    n: usize,
    k: usize,
}

impl PermSpec {
    pub fn new(n: usize, k: usize, cap: usize) -> Result<Self, OracleError> {
        if k > n {
            return Err(OracleError::BadK { n, k });
        }
        if n > cap {
            return Err(OracleError::CapExceeded { n, cap });
        }
        Ok(PermSpec { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Advance `p` to its lexicographic successor; false once `p` is the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len())
        .rev()
        .find(|&j| p[j] > p[i])
        .expect("a larger element exists past i");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

// Visit every permutation of 0..n (0-based images), split by p[0].
fn count_by<F>(n: usize, accept: F) -> u64
where
    F: Fn(&[usize]) -> u64 + Sync,
{
    if n == 0 {
        return accept(&[]);
    }
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut p: Vec<usize> = std::iter::once(first)
                .chain((0..n).filter(|&x| x != first))
                .collect();
            let mut total = 0;
            loop {
                total += accept(&p);
                if !next_permutation(&mut p[1..]) {
                    break;
                }
            }
            total
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

// No fixed point at 0-based positions k..n.
fn no_late_fixed_points(p: &[usize], k: usize) -> bool {
    (k..p.len()).all(|i| p[i] != i)
}

// Elements 0..k lie in pairwise distinct cycles (cycle walk from each).
fn heads_in_distinct_cycles(p: &[usize], k: usize) -> bool {
    let mut cycle_of = vec![usize::MAX; p.len()];
    for start in 0..k {
        if cycle_of[start] != usize::MAX {
            return false;
        }
        let mut x = start;
        loop {
            cycle_of[x] = start;
            x = p[x];
            if x == start {
                break;
            }
        }
    }
    true
}

pub fn count_e_oracle<T: ExactInt>(spec: PermSpec) -> T {
    let k = spec.k;
    let c = count_by(spec.n, |p| no_late_fixed_points(p, k) as u64);
    T::from_u64(c).expect("count fits the scalar type")
}

pub fn count_d_oracle<T: ExactInt>(spec: PermSpec) -> T {
    let k = spec.k;
    let c = count_by(spec.n, |p| {
        (no_late_fixed_points(p, k) && heads_in_distinct_cycles(p, k)) as u64
    });
    T::from_u64(c).expect("count fits the scalar type")
}

/// Both counts for every `k` of row `n` from a single enumeration pass.
///
/// For a fixed permutation, "no fixed point past k" holds for all `k` at or
/// above the last fixed point, and "1..k in distinct cycles" holds for all `k`
/// up to the first repeated cycle, so each permutation contributes to a
/// contiguous range of `k`.
pub fn oracle_row<T: ExactInt>(n: usize, cap: usize) -> Result<(Vec<T>, Vec<T>), OracleError> {
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let ranges: Vec<(usize, usize)> = if n == 0 {
        vec![(0, 0)]
    } else {
        (0..n)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut p: Vec<usize> = std::iter::once(first)
                    .chain((0..n).filter(|&x| x != first))
                    .collect();
                let mut out = Vec::new();
                loop {
                    let lo = (0..n).rev().find(|&i| p[i] == i).map_or(0, |i| i + 1);
                    let hi = max_distinct_prefix(&p);
                    out.push((lo, hi));
                    if !next_permutation(&mut p[1..]) {
                        break;
                    }
                }
                out
            })
            .collect()
    };
    let mut e = vec![0u64; n + 1];
    let mut d = vec![0u64; n + 1];
    for (lo, hi) in ranges {
        for k in lo..=n {
            e[k] += 1;
            if k <= hi {
                d[k] += 1;
            }
        }
    }
    let lift = |v: Vec<u64>| {
        v.into_iter()
            .map(|c| T::from_u64(c).expect("count fits"))
            .collect()
    };
    Ok((lift(e), lift(d)))
}

// Largest k such that elements 0..k sit in distinct cycles.
fn max_distinct_prefix(p: &[usize]) -> usize {
    let n = p.len();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if label[i] != usize::MAX {
            continue;
        }
        let mut x = i;
        while label[x] == usize::MAX {
            label[x] = next;
            x = p[x];
        }
        next += 1;
    }
    let mut seen = vec![false; n];
    for (k, &l) in label.iter().enumerate() {
        if seen[l] {
            return k;
        }
        seen[l] = true;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, k: usize) -> PermSpec {
        PermSpec::new(n, k, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn successor_walks_all_permutations() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![3, 2, 1, 0]);
    }

    #[test]
    fn d_counts() {
        assert_eq!(count_d_oracle::<i64>(spec(3, 1)), 3);
        assert_eq!(count_d_oracle::<i64>(spec(3, 2)), 2);
        assert_eq!(count_d_oracle::<i64>(spec(0, 0)), 1);
    }

    #[test]
    fn e_counts() {
        assert_eq!(count_e_oracle::<i64>(spec(4, 1)), 11);
        assert_eq!(count_e_oracle::<i64>(spec(4, 0)), 9);
        assert_eq!(count_e_oracle::<i64>(spec(2, 2)), 2);
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            PermSpec::new(11, 0, 10),
            Err(OracleError::CapExceeded { n: 11, cap: 10 })
        );
        assert_eq!(
            PermSpec::new(3, 4, 10),
            Err(OracleError::BadK { n: 3, k: 4 })
        );
        assert!(PermSpec::new(11, 0, 12).is_ok());
    }

    #[test]
    fn row_pass_matches_single_counts() {
        for n in 0..=6 {
            let (e, d) = oracle_row::<i64>(n, DEFAULT_CAP).unwrap();
            for k in 0..=n {
                assert_eq!(e[k], count_e_oracle::<i64>(spec(n, k)), "e n={n} k={k}");
                assert_eq!(d[k], count_d_oracle::<i64>(spec(n, k)), "d n={n} k={k}");
            }
        }
    }

    #[test]
    fn diagonal_counts() {
        for n in 1..=7 {
            assert_eq!(count_d_oracle::<i64>(spec(n, n)), 1);
            assert_eq!(count_d_oracle::<i64>(spec(n, n - 1)), n as i64 - 1);
        }
    }
}
