use std::fmt;

use serde::{Deserialize, Serialize};

/// Overall outcome of a check or a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Violation,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Violation => "violation",
            Outcome::NotApplicable => "not-applicable",
        })
    }
}

/// A failed comparison with its exact operands as decimal strings.
///
/// `index` is `k` for table checks and the sequence index for sequence checks.
/// `n` is filled in when the check belongs to a table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub k: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub lhs: String,
    pub rhs: String,
    pub claim: String,
}

impl Violation {
    pub fn new(k: i64, lhs: impl ToString, rhs: impl ToString, claim: impl Into<String>) -> Self {
        Violation {
            n: None,
            k,
            depth: None,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            claim: claim.into(),
        }
    }

    pub fn at_row(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn at_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.n {
            write!(f, "n={n} ")?;
        }
        write!(f, "k={}", self.k)?;
        if let Some(d) = self.depth {
            write!(f, " depth={d}")?;
        }
        write!(f, " [{}]: lhs={} rhs={}", self.claim, self.lhs, self.rhs)
    }
}

/// Result of one check: how many comparisons ran, which claims applied, and
/// every comparison that failed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verdict {
    pub checked: usize,
    pub applied: Vec<&'static str>,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn outcome(&self) -> Outcome {
        if !self.violations.is_empty() {
            Outcome::Violation
        } else if self.checked == 0 {
            Outcome::NotApplicable
        } else {
            Outcome::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub(crate) fn apply(&mut self, claim: &'static str) {
        if !self.applied.contains(&claim) {
            self.applied.push(claim);
        }
    }

    /// Record one comparison; `ok` decides whether it counts as a violation.
    pub(crate) fn record(
        &mut self,
        claim: &'static str,
        k: i64,
        ok: bool,
        lhs: impl ToString,
        rhs: impl ToString,
    ) {
        self.apply(claim);
        self.checked += 1;
        if !ok {
            self.violations.push(Violation::new(k, lhs, rhs, claim));
        }
    }

    pub fn merge(&mut self, other: Verdict) {
        self.checked += other.checked;
        for c in other.applied {
            self.apply(c);
        }
        self.violations.extend(other.violations);
    }

    pub fn at_row(mut self, n: usize) -> Self {
        for v in &mut self.violations {
            v.n = Some(n);
        }
        self
    }
}
