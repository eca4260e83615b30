//! Euler's difference table `e(n, k)` and its normalisation `d(n, k) = e(n, k) / k!`.
//!
//! The e-table is seeded with `e(n, n) = n!` and filled right to left with
//! `e(n, k-1) = e(n, k) - e(n-1, k-1)`. The d-table can be obtained from it by
//! exact division or built directly from any of three recurrences; all four
//! routes must agree, which [`cross_validate`] checks.
//!
//! Column `k = 0` of the d-table holds the derangement numbers. It is always
//! filled with the same-column recurrence, `d(n, 0) = (n-1)(d(n-1, 0) + d(n-2, 0))`,
//! because the other two recurrences reach for a `k = -1` column that does
//! not exist.

use std::fmt;
use std::time::Instant;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::GridReport;
use crate::scalar::{factorial, lift, ExactInt};
use crate::verdict::{Verdict, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("{k}! does not divide e({n}, {k})")]
    DivisibilityViolation { n: usize, k: usize },
    #[error("d({n}, {k}) is zero, ratio undefined")]
    ZeroDenominator { n: usize, k: usize },
    #[error("index (n={n}, k={k}) outside the table (max_n = {max_n})")]
    IndexOutOfRange { n: i64, k: i64, max_n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKind {
    E,
    D,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::E => "e",
            TableKind::D => "d",
        })
    }
}

/// How the d-table interior (`1 <= k <= n-1`) is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuildMethod {
    /// Build the e-table and divide entry `(n, k)` by `k!`.
    FromE,
    /// `d(n,k) = (n-1) d(n-1,k) + (n-k-1) d(n-2,k)`
    SameColumn,
    /// `d(n,k) = n d(n-1,k) - d(n-2,k-1)`
    LowerDiagonal,
    /// `d(n,k) = d(n-1,k-1) + (n-k) d(n-1,k)`
    Pascal,
}

impl BuildMethod {
    pub const ALL: [BuildMethod; 4] = [
        BuildMethod::FromE,
        BuildMethod::SameColumn,
        BuildMethod::LowerDiagonal,
        BuildMethod::Pascal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuildMethod::FromE => "from-e",
            BuildMethod::SameColumn => "same-column",
            BuildMethod::LowerDiagonal => "lower-diagonal",
            BuildMethod::Pascal => "pascal",
        }
    }
}

/// Dense triangular array, row `n` holding `n + 1` entries. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleTable<T> {
    kind: TableKind,
    rows: Vec<Vec<T>>,
}

impl<T: ExactInt> TriangleTable<T> {
    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&[T]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&T> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    /// Entry lookup with signed indices; anything outside `0 <= k <= n <= max_n`
    /// is an [`TableError::IndexOutOfRange`].
    pub fn entry(&self, n: i64, k: i64) -> Result<&T, TableError> {
        if n < 0 || k < 0 {
            return Err(self.out_of_range(n, k));
        }
        self.get(n as usize, k as usize)
            .ok_or_else(|| self.out_of_range(n, k))
    }

    pub(crate) fn out_of_range(&self, n: i64, k: i64) -> TableError {
        TableError::IndexOutOfRange {
            n,
            k,
            max_n: self.max_n(),
        }
    }
}

/// The e-table for `0 <= k <= n <= max_n`.
pub fn build_e<T: ExactInt>(max_n: usize) -> TriangleTable<T> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(max_n + 1);
    let mut diag = T::one();
    for n in 0..=max_n {
        if n > 0 {
            diag = diag * lift::<T>(n as i64);
        }
        let mut row = vec![T::zero(); n + 1];
        row[n] = diag.clone();
        for k in (1..=n).rev() {
            row[k - 1] = row[k].clone() - rows[n - 1][k - 1].clone();
        }
        rows.push(row);
    }
    TriangleTable {
        kind: TableKind::E,
        rows,
    }
}

/// The d-table for `0 <= k <= n <= max_n`, built with `method`.
pub fn build_d<T: ExactInt>(
    max_n: usize,
    method: BuildMethod,
) -> Result<TriangleTable<T>, TableError> {
    if method == BuildMethod::FromE {
        return divide_e(&build_e::<T>(max_n));
    }
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut row = vec![T::zero(); n + 1];
        row[n] = T::one();
        if n >= 1 {
            row[0] = derangement_step(&rows, n);
        }
        for (k, slot) in row.iter_mut().enumerate().take(n).skip(1) {
            *slot = interior(&rows, n, k, method);
        }
        rows.push(row);
    }
    Ok(TriangleTable {
        kind: TableKind::D,
        rows,
    })
}

fn divide_e<T: ExactInt>(e: &TriangleTable<T>) -> Result<TriangleTable<T>, TableError> {
    let mut rows = Vec::with_capacity(e.rows.len());
    let mut kfact: Vec<T> = Vec::with_capacity(e.rows.len());
    for k in 0..e.rows.len() {
        kfact.push(if k == 0 {
            T::one()
        } else {
            kfact[k - 1].clone() * lift::<T>(k as i64)
        });
    }
    for (n, erow) in e.rows.iter().enumerate() {
        let mut row = Vec::with_capacity(n + 1);
        for (k, v) in erow.iter().enumerate() {
            let (q, r) = v.div_rem(&kfact[k]);
            if !r.is_zero() {
                return Err(TableError::DivisibilityViolation { n, k });
            }
            row.push(q);
        }
        rows.push(row);
    }
    Ok(TriangleTable {
        kind: TableKind::D,
        rows,
    })
}

// d(n, 0) = (n-1) d(n-1, 0) + (n-1) d(n-2, 0); the second term vanishes at n = 1.
fn derangement_step<T: ExactInt>(rows: &[Vec<T>], n: usize) -> T {
    let c = lift::<T>(n as i64 - 1);
    let prev = rows[n - 1][0].clone();
    if n >= 2 {
        c * (prev + rows[n - 2][0].clone())
    } else {
        c * prev
    }
}

fn interior<T: ExactInt>(rows: &[Vec<T>], n: usize, k: usize, method: BuildMethod) -> T {
    let (ni, ki) = (n as i64, k as i64);
    match method {
        BuildMethod::SameColumn => {
            let a = lift::<T>(ni - 1) * rows[n - 1][k].clone();
            // at k = n-1 the coefficient n-k-1 is zero and d(n-2, n-1) lies outside the triangle
            if k + 1 < n {
                a + lift::<T>(ni - ki - 1) * rows[n - 2][k].clone()
            } else {
                a
            }
        }
        BuildMethod::LowerDiagonal => {
            lift::<T>(ni) * rows[n - 1][k].clone() - rows[n - 2][k - 1].clone()
        }
        BuildMethod::Pascal => {
            rows[n - 1][k - 1].clone() + lift::<T>(ni - ki) * rows[n - 1][k].clone()
        }
        BuildMethod::FromE => unreachable!("FromE is handled by divide_e"),
    }
}

/// `d(n+1, k) / d(n, k)` in lowest terms.
pub fn ratio<T: ExactInt>(
    d: &TriangleTable<T>,
    n: usize,
    k: usize,
) -> Result<Ratio<T>, TableError> {
    if k > n || n + 1 > d.max_n() {
        return Err(d.out_of_range(n as i64, k as i64));
    }
    let den = &d.rows[n][k];
    if den.is_zero() {
        return Err(TableError::ZeroDenominator { n, k });
    }
    Ok(Ratio::new(d.rows[n + 1][k].clone(), den.clone()))
}

/// Derangement numbers by `D(n) = n D(n-1) + (-1)^n`, independent of the tables.
pub fn derangements<T: ExactInt>(max_n: usize) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let v = if n == 0 {
            T::one()
        } else {
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            lift::<T>(n as i64) * out[n - 1].clone() + sign
        };
        out.push(v);
    }
    out
}

/// Build the d-table by every method (concurrently) and compare entrywise
/// against the [`BuildMethod::FromE`] reference.
pub fn cross_validate<T: ExactInt>(max_n: usize) -> Result<GridReport, TableError> {
    let start = Instant::now();
    let built: Vec<Result<TriangleTable<T>, TableError>> = std::thread::scope(|s| {
        let handles: Vec<_> = BuildMethod::ALL
            .iter()
            .map(|&m| s.spawn(move || build_d::<T>(max_n, m)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table builder panicked"))
            .collect()
    });
    let tables = built.into_iter().collect::<Result<Vec<_>, _>>()?;
    let reference = &tables[0];

    let mut verdict = Verdict::new();
    for (n, row) in reference.rows.iter().enumerate() {
        for (k, expected) in row.iter().enumerate() {
            for (method, table) in BuildMethod::ALL.iter().zip(&tables).skip(1) {
                let got = &table.rows[n][k];
                verdict.checked += 1;
                if got != expected {
                    verdict.violations.push(
                        Violation::new(
                            k as i64,
                            got,
                            expected,
                            format!("{} agrees with from-e", method.name()),
                        )
                        .at_row(n),
                    );
                }
            }
        }
    }
    verdict.apply("cross-recurrence");

    let mut report = GridReport::new("cross-validate");
    report.config.insert("max_n".into(), max_n.to_string());
    report.absorb(verdict);
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// `k!` for every `k <= max_k`.
pub fn factorials<T: ExactInt>(max_k: usize) -> Vec<T> {
    (0..=max_k).map(factorial::<T>).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn row_i64(t: &TriangleTable<i64>, n: usize) -> Vec<i64> {
        t.row(n).unwrap().to_vec()
    }

    #[test]
    fn e_rows() {
        let e = build_e::<i64>(4);
        assert_eq!(row_i64(&e, 0), vec![1]);
        assert_eq!(row_i64(&e, 3), vec![2, 3, 4, 6]);
        assert_eq!(row_i64(&e, 4), vec![9, 11, 14, 18, 24]);
        assert_eq!(e.kind(), TableKind::E);
    }

    #[test]
    fn d_rows_all_methods() {
        for m in BuildMethod::ALL {
            let d = build_d::<i64>(5, m).unwrap();
            assert_eq!(row_i64(&d, 0), vec![1], "{m:?}");
            assert_eq!(row_i64(&d, 1), vec![0, 1], "{m:?}");
            assert_eq!(row_i64(&d, 2), vec![1, 1, 1], "{m:?}");
            assert_eq!(row_i64(&d, 4), vec![9, 11, 7, 3, 1], "{m:?}");
            assert_eq!(row_i64(&d, 5), vec![44, 53, 32, 13, 4, 1], "{m:?}");
        }
    }

    #[test]
    fn max_n_one_is_base_cases_only() {
        for m in BuildMethod::ALL {
            let d = build_d::<i64>(1, m).unwrap();
            assert_eq!(d.max_n(), 1);
            assert_eq!(row_i64(&d, 1), vec![0, 1]);
        }
    }

    #[test]
    fn ratios() {
        let d = build_d::<BigInt>(5, BuildMethod::Pascal).unwrap();
        let r = ratio(&d, 4, 2).unwrap();
        assert_eq!(r, Ratio::new(BigInt::from(32), BigInt::from(7)));
        let r = ratio(&d, 4, 4).unwrap();
        assert_eq!(r, Ratio::from_integer(BigInt::from(4)));
        assert_eq!(
            ratio(&d, 1, 0),
            Err(TableError::ZeroDenominator { n: 1, k: 0 })
        );
        assert!(matches!(
            ratio(&d, 5, 0),
            Err(TableError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            ratio(&d, 2, 3),
            Err(TableError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn ratio_is_reduced() {
        let d = build_d::<i64>(7, BuildMethod::SameColumn).unwrap();
        for n in 2..7 {
            for k in 0..=n {
                let r = ratio(&d, n, k).unwrap();
                assert_eq!(num_integer::gcd(*r.numer(), *r.denom()), 1);
                assert!(*r.denom() > 0);
            }
        }
    }

    #[test]
    fn entry_bounds() {
        let d = build_d::<i64>(3, BuildMethod::Pascal).unwrap();
        assert_eq!(*d.entry(3, 2).unwrap(), 2);
        assert!(d.entry(-1, 0).is_err());
        assert!(d.entry(2, 3).is_err());
        assert!(d.entry(4, 0).is_err());
    }

    #[test]
    fn derangement_column() {
        let d = build_d::<i64>(12, BuildMethod::LowerDiagonal).unwrap();
        let der = derangements::<i64>(12);
        for n in 0..=12 {
            assert_eq!(*d.get(n, 0).unwrap(), der[n]);
        }
        assert_eq!(der[5], 44);
    }

    #[test]
    fn small_cross_validation() {
        assert!(cross_validate::<BigInt>(2).unwrap().violations.is_empty());
        let r = cross_validate::<BigInt>(10).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.checked_count, 3 * 66);
    }
}
