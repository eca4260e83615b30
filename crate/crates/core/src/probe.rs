//! Repeated application of the log-concavity operator, looking for the first
//! negative entry.
//!
//! Exact iteration doubles the bit length of the entries at every depth, so a
//! row of length 61 under `Shrink` would need values of roughly 10^11 bits
//! before its window empties. Past a configurable size the probe therefore
//! continues on [`Interval`]s: the exact iterate is enclosed at some precision
//! and the iteration proceeds with outward rounding. A sign is only reported
//! when the enclosure proves it; if some entry's interval straddles zero the
//! precision is doubled and the tail re-run from the last exact iterate.

use num_bigint::{BigInt, ToBigInt};

use crate::concavity::{l_operator, Convention, Sequence};
use crate::interval::Interval;
use crate::scalar::{ExactInt, LScalar, SignInfo};

/// Precision is never raised past this many bits.
pub const MAX_PRECISION: u32 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeMode {
    /// Exact integers throughout.
    Exact,
    /// Intervals from depth 0, starting at `precision` bits.
    Certified { precision: u32 },
    /// Exact while every entry fits in `exact_bit_limit` bits, intervals after.
    Auto {
        exact_bit_limit: u64,
        precision: u32,
    },
}

impl Default for ProbeMode {
    fn default() -> Self {
        ProbeMode::Auto {
            exact_bit_limit: 1 << 15,
            precision: 128,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeOptions {
    /// `None` iterates until a violation or, under `Shrink`, until the window empties.
    pub max_depth: Option<usize>,
    pub convention: Convention,
    pub mode: ProbeMode,
    /// Keep the exact iterates in the report.
    pub keep_iterates: bool,
}

impl ProbeOptions {
    pub fn new(max_depth: Option<usize>, convention: Convention) -> Self {
        ProbeOptions {
            max_depth,
            convention,
            mode: ProbeMode::default(),
            keep_iterates: false,
        }
    }
}

/// First negative entry found: depth of the iterate, index, and its value
/// (an enclosing interval when it was found in certified arithmetic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeViolation {
    pub depth: usize,
    pub index: i64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LReport<T> {
    pub convention: Convention,
    /// Depth of the last nonempty iterate that was computed.
    pub depth_reached: usize,
    /// `iterates[0]` is the input; only exact iterates are kept.
    pub iterates: Vec<Sequence<T>>,
    pub first_violation: Option<ProbeViolation>,
    /// Entries that are exactly zero: nonnegative, but not strictly positive.
    pub zero_entries: Vec<(usize, i64)>,
    /// Under `Shrink`, the window emptied before `max_depth`.
    pub exhausted: bool,
    /// Depth of the first iterate computed in interval arithmetic.
    pub certified_from_depth: Option<usize>,
    /// Precision of the final certified run.
    pub precision: Option<u32>,
    /// An entry whose sign the maximum precision could not decide.
    pub undecided: Option<(usize, i64)>,
}

impl<T> LReport<T> {
    fn empty(convention: Convention) -> Self {
        LReport {
            convention,
            depth_reached: 0,
            iterates: Vec::new(),
            first_violation: None,
            zero_entries: Vec::new(),
            exhausted: false,
            certified_from_depth: None,
            precision: None,
            undecided: None,
        }
    }

    /// No negative entry and no undecided sign.
    pub fn is_clean(&self) -> bool {
        self.first_violation.is_none() && self.undecided.is_none()
    }
}

/// Exact probe keeping every iterate.
pub fn probe_infinite<T: ExactInt + ToBigInt>(
    seq: &Sequence<T>,
    max_depth: usize,
    conv: Convention,
) -> LReport<T> {
    let opts = ProbeOptions {
        max_depth: Some(max_depth),
        convention: conv,
        mode: ProbeMode::Exact,
        keep_iterates: true,
    };
    probe(seq, &opts)
}

enum Step {
    Continue,
    Stop,
}

// Scan one iterate; returns Stop on a negative or undecided entry.
fn scan<S: LScalar, T>(it: &Sequence<S>, depth: usize, report: &mut LReport<T>) -> Step {
    for (k, v) in it.indexed() {
        match v.sign_info() {
            SignInfo::Negative => {
                report.first_violation = Some(ProbeViolation {
                    depth,
                    index: k,
                    value: v.to_string(),
                });
                return Step::Stop;
            }
            SignInfo::Unknown => {
                report.undecided = Some((depth, k));
                return Step::Stop;
            }
            SignInfo::Zero => report.zero_entries.push((depth, k)),
            SignInfo::Positive | SignInfo::NonNegative => {}
        }
    }
    Step::Continue
}

fn depth_allowed(opts: &ProbeOptions, depth: usize) -> bool {
    opts.max_depth.is_none_or(|m| depth < m)
}

fn max_bits<T: ToBigInt>(seq: &Sequence<T>) -> u64 {
    seq.values()
        .iter()
        .map(|v| v.to_bigint().map_or(0, |b| b.bits()))
        .max()
        .unwrap_or(0)
}

pub fn probe<T: ExactInt + ToBigInt>(seq: &Sequence<T>, opts: &ProbeOptions) -> LReport<T> {
    assert!(
        opts.max_depth.is_some() || opts.convention == Convention::Shrink,
        "an unbounded probe needs the shrink convention to terminate"
    );
    let mut report = LReport::empty(opts.convention);
    if opts.keep_iterates {
        report.iterates.push(seq.clone());
    }
    let (bit_limit, precision) = match opts.mode {
        ProbeMode::Exact => (u64::MAX, 0),
        ProbeMode::Certified { precision } => (0, precision),
        ProbeMode::Auto {
            exact_bit_limit,
            precision,
        } => (exact_bit_limit, precision),
    };

    let mut cur = seq.clone();
    let mut depth = 0;
    loop {
        if !depth_allowed(opts, depth) {
            return report;
        }
        if opts.convention == Convention::Shrink && cur.len() < 3 {
            report.exhausted = true;
            return report;
        }
        if max_bits(&cur) > bit_limit {
            let exact = cur.map(|v| v.to_bigint().expect("integer converts to BigInt"));
            certified_tail(&exact, depth, precision.max(2), opts, &mut report);
            return report;
        }
        let next = l_operator(&cur, opts.convention).expect("window checked above");
        depth += 1;
        report.depth_reached = depth;
        let step = scan(&next, depth, &mut report);
        if opts.keep_iterates {
            report.iterates.push(next.clone());
        }
        if let Step::Stop = step {
            return report;
        }
        cur = next;
    }
}

// Continue from an exact iterate at `start_depth` in interval arithmetic,
// doubling the precision while some sign stays undecided.
fn certified_tail<T>(
    start: &Sequence<BigInt>,
    start_depth: usize,
    mut precision: u32,
    opts: &ProbeOptions,
    report: &mut LReport<T>,
) {
    let zeros_before = report.zero_entries.len();
    loop {
        report.zero_entries.truncate(zeros_before);
        report.first_violation = None;
        report.undecided = None;
        report.exhausted = false;
        report.depth_reached = start_depth;
        report.certified_from_depth = Some(start_depth + 1);
        report.precision = Some(precision);

        let mut cur: Sequence<Interval> = start.map(|v| Interval::from_int(v, precision));
        let mut depth = start_depth;
        loop {
            if !depth_allowed(opts, depth) {
                break;
            }
            if opts.convention == Convention::Shrink && cur.len() < 3 {
                report.exhausted = true;
                break;
            }
            let next = l_operator(&cur, opts.convention).expect("window checked above");
            depth += 1;
            report.depth_reached = depth;
            if let Step::Stop = scan(&next, depth, report) {
                break;
            }
            cur = next;
        }
        if report.undecided.is_none() || precision >= MAX_PRECISION {
            return;
        }
        precision = precision.saturating_mul(2).min(MAX_PRECISION);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> Sequence<BigInt> {
        Sequence::from_row(&[9, 11, 7, 3, 1].map(BigInt::from)).unwrap()
    }

    #[test]
    fn shrink_probe_runs_out() {
        let r = probe_infinite(&d4(), 10, Convention::Shrink);
        assert!(r.is_clean());
        assert!(r.exhausted);
        assert_eq!(r.depth_reached, 2);
        let vals: Vec<Vec<String>> = r
            .iterates
            .iter()
            .map(|s| s.values().iter().map(|v| v.to_string()).collect())
            .collect();
        assert_eq!(
            vals,
            vec![
                vec!["9", "11", "7", "3", "1"],
                vec!["58", "16", "2"],
                vec!["140"]
            ]
        );
    }

    #[test]
    fn pad_probe_finds_boundary_violation() {
        let r = probe_infinite(&d4(), 10, Convention::ZeroPad);
        assert_eq!(
            r.first_violation,
            Some(ProbeViolation {
                depth: 2,
                index: 3,
                value: "-12".into()
            })
        );
        assert_eq!(r.depth_reached, 2);
    }

    #[test]
    fn pad_probe_of_one_never_fails() {
        let one = Sequence::new(0, vec![BigInt::from(1)]).unwrap();
        let r = probe_infinite(&one, 5, Convention::ZeroPad);
        assert!(r.is_clean());
        assert!(!r.exhausted);
        assert_eq!(r.depth_reached, 5);
        assert_eq!(r.iterates.len(), 6);
        assert!(r.iterates.iter().all(|s| s.values() == [BigInt::from(1)]));
    }

    #[test]
    fn certified_matches_exact_on_small_rows() {
        for conv in [Convention::Shrink, Convention::ZeroPad] {
            let exact = probe_infinite(&d4(), 6, conv);
            let opts = ProbeOptions {
                max_depth: Some(6),
                convention: conv,
                mode: ProbeMode::Certified { precision: 8 },
                keep_iterates: false,
            };
            let cert = probe(&d4(), &opts);
            assert_eq!(cert.depth_reached, exact.depth_reached);
            assert_eq!(
                cert.first_violation.as_ref().map(|v| (v.depth, v.index)),
                exact.first_violation.as_ref().map(|v| (v.depth, v.index))
            );
            assert_eq!(cert.certified_from_depth, Some(1));
        }
    }

    #[test]
    fn exact_zero_is_recorded_not_violating() {
        let flat = Sequence::from_row(&[1, 1, 1].map(BigInt::from)).unwrap();
        let r = probe_infinite(&flat, 4, Convention::Shrink);
        assert!(r.is_clean());
        assert_eq!(r.zero_entries, vec![(1, 1)]);
    }
}
