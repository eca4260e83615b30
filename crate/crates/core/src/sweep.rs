//! Grid sweeps over the d-table.
//!
//! Rows are farmed out to a rayon pool of the requested size; each row
//! produces its own verdict and the verdicts are concatenated in row order, so
//! a report never depends on the number of workers or on scheduling.

use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::concavity::{check_property_within, ConcavityError, Property, Sequence};
use crate::perm::{oracle_row, OracleError};
use crate::probe::{probe, ProbeOptions};
use crate::report::{GridReport, RowSummary};
use crate::scalar::ExactInt;
use crate::table::{build_e, TableError, TriangleTable};
use crate::verdict::{Verdict, Violation};
use crate::verify::{
    ratio_bounds_apply, reverse_ultra_applies, two_fold_applies, verify_cubic_machinery,
    verify_ratio_bounds, verify_reverse_ultra_machinery, verify_substitutions,
};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Concavity(#[from] ConcavityError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Bounds,
    Substitutions,
    Cubic,
    ReverseUltra,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Bounds,
        Suite::Substitutions,
        Suite::Cubic,
        Suite::ReverseUltra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Substitutions => "substitutions",
            Suite::Cubic => "cubic",
            Suite::ReverseUltra => "reverse-ultra",
        }
    }

    /// Is `(n, k)` inside the hypotheses of the claims this suite checks?
    pub fn applies(self, n: usize, k: usize) -> bool {
        match self {
            Suite::Bounds => ratio_bounds_apply(n, k),
            Suite::Substitutions => k >= 1 && k <= n,
            Suite::Cubic => two_fold_applies(n, k),
            Suite::ReverseUltra => reverse_ultra_applies(n, k),
        }
    }

    pub fn verify<T: ExactInt>(
        self,
        d: &TriangleTable<T>,
        n: usize,
        k: usize,
    ) -> Result<Verdict, TableError> {
        match self {
            Suite::Bounds => verify_ratio_bounds(d, n, k),
            Suite::Substitutions => verify_substitutions(d, n, k),
            Suite::Cubic => verify_cubic_machinery(d, n, k),
            Suite::ReverseUltra => verify_reverse_ultra_machinery(d, n, k),
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Which `(n, k)` points a sweep visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub n: RangeInclusive<usize>,
    pub k: Option<RangeInclusive<usize>>,
    /// Visit every point, counting those outside a claim's hypotheses as
    /// not applicable instead of skipping them.
    pub full: bool,
}

impl Grid {
    pub fn rows(n: RangeInclusive<usize>) -> Self {
        Grid {
            n,
            k: None,
            full: false,
        }
    }

    fn k_allows(&self, k: usize) -> bool {
        self.k.as_ref().is_none_or(|r| r.contains(&k))
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, SweepError> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()?)
}

// (verdict, not-applicable count) per row, in row order.
fn per_row<F>(grid: &Grid, threads: usize, f: F) -> Result<Vec<(Verdict, u64)>, SweepError>
where
    F: Fn(usize) -> Result<(Verdict, u64), SweepError> + Sync + Send,
{
    let rows: Vec<usize> = grid.n.clone().collect();
    pool(threads)?.install(|| rows.par_iter().map(|&n| f(n)).collect())
}

fn finish(report: &mut GridReport, parts: Vec<(Verdict, u64)>) {
    for (v, na) in parts {
        report.absorb(v);
        report.add_not_applicable(na);
    }
}

/// Run the given suites on every grid point. `d` must reach row `grid.n.end() + 1`.
pub fn sweep_verify<T: ExactInt>(
    d: &TriangleTable<T>,
    suites: &[Suite],
    grid: &Grid,
    threads: usize,
) -> Result<GridReport, SweepError> {
    let parts = per_row(grid, threads, |n| {
        let mut row = Verdict::new();
        let mut na = 0;
        for k in (0..=n).filter(|&k| grid.k_allows(k)) {
            for &suite in suites {
                if !suite.applies(n, k) {
                    na += grid.full as u64;
                    continue;
                }
                row.merge(suite.verify(d, n, k)?.at_row(n));
            }
        }
        Ok((row, na))
    })?;
    let mut report = GridReport::new("verify");
    finish(&mut report, parts);
    Ok(report)
}

/// Smallest row on which `property` is claimed for the d-table.
pub fn property_min_row(property: Property) -> usize {
    match property {
        Property::LogConcave | Property::LLogConcave(1) => 1,
        Property::LLogConcave(_) => 4,
        Property::Ultra | Property::ReverseUltra => 2,
    }
}

/// Check `property` on each d-row in the grid; rows below the claimed range
/// are not applicable under a full grid and skipped otherwise.
pub fn sweep_property<T: ExactInt>(
    d: &TriangleTable<T>,
    property: Property,
    conv: crate::concavity::Convention,
    grid: &Grid,
    threads: usize,
) -> Result<GridReport, SweepError> {
    let min_row = property_min_row(property);
    let window = grid.k.as_ref().map(|r| *r.start() as i64..=*r.end() as i64);
    let parts = per_row(grid, threads, |n| {
        if n < min_row {
            return Ok((Verdict::new(), grid.full as u64));
        }
        let row = d.row(n).ok_or_else(|| d.out_of_range(n as i64, 0))?;
        let seq = Sequence::from_row(row)?;
        let v = check_property_within(&seq, property, conv, window.as_ref())?;
        Ok((v.at_row(n), 0))
    })?;
    let mut report = GridReport::new("check");
    finish(&mut report, parts);
    Ok(report)
}

/// Probe every d-row in the grid with the given options.
pub fn sweep_probe<T: ExactInt + num_bigint::ToBigInt>(
    d: &TriangleTable<T>,
    opts: &ProbeOptions,
    grid: &Grid,
    threads: usize,
) -> Result<GridReport, SweepError> {
    let rows: Vec<usize> = grid.n.clone().collect();
    let results = pool(threads)?.install(|| {
        rows.par_iter()
            .map(|&n| {
                let row = d.row(n).ok_or_else(|| d.out_of_range(n as i64, 0))?;
                let seq = Sequence::from_row(row)?;
                Ok((n, probe(&seq, opts)))
            })
            .collect::<Result<Vec<_>, SweepError>>()
    })?;
    let mut report = GridReport::new("probe");
    let mut summaries = Vec::with_capacity(results.len());
    for (n, r) in results {
        let (v, status) = probe_verdict(&r);
        summaries.push(RowSummary {
            n,
            depth_reached: r.depth_reached,
            status: status.to_string(),
            certified_from_depth: r.certified_from_depth,
        });
        report.absorb(v.at_row(n));
    }
    report.rows = Some(summaries);
    Ok(report)
}

/// Turn a probe result into a one-check verdict and a row status
/// (`violation`, `undecided`, `exhausted` or `depth-limit`).
pub fn probe_verdict<T>(r: &crate::probe::LReport<T>) -> (Verdict, &'static str) {
    let mut v = Verdict::new();
    v.apply("infinitely-log-concave");
    v.checked = 1;
    let status = if let Some(fv) = &r.first_violation {
        v.violations
            .push(Violation::new(fv.index, &fv.value, 0, "l-log-concave").at_depth(fv.depth));
        "violation"
    } else if let Some((depth, k)) = r.undecided {
        v.violations
            .push(Violation::new(k, "undecided", 0, "certified-sign-undecided").at_depth(depth));
        "undecided"
    } else if r.exhausted {
        "exhausted"
    } else {
        "depth-limit"
    };
    (v, status)
}

/// Compare the permutation counts with the e- and d-tables for every row in
/// the grid, and check `e = k! d` entrywise.
pub fn sweep_oracle<T: ExactInt>(
    d: &TriangleTable<T>,
    grid: &Grid,
    cap: usize,
    threads: usize,
) -> Result<GridReport, SweepError> {
    let max_n = *grid.n.end();
    if max_n > cap {
        return Err(OracleError::CapExceeded { n: max_n, cap }.into());
    }
    let e = build_e::<T>(max_n);
    let facts = crate::table::factorials::<T>(max_n);
    let parts = per_row(grid, threads, |n| {
        let (oe, od) = oracle_row::<T>(n, cap)?;
        let mut v = Verdict::new();
        for k in (0..=n).filter(|&k| grid.k_allows(k)) {
            let (ki, te, td) = (
                k as i64,
                e.get(n, k).expect("in table"),
                d.get(n, k).expect("in table"),
            );
            v.record("oracle-e", ki, &oe[k] == te, &oe[k], te);
            v.record("oracle-d", ki, &od[k] == td, &od[k], td);
            let scaled = facts[k].clone() * td.clone();
            v.record("e-equals-factorial-times-d", ki, &scaled == te, &scaled, te);
        }
        Ok((v.at_row(n), 0))
    })?;
    let mut report = GridReport::new("oracle");
    finish(&mut report, parts);
    Ok(report)
}
