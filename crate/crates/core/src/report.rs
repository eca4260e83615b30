//! Sweep reports and their three output formats.
//!
//! Json key order is fixed by the field order of [`GridReport`]; `elapsed_ms`
//! comes last and is the only field that varies between identical runs. Csv
//! never carries timing. Every number in a report is a decimal string.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};

use crate::scalar::ExactInt;
use crate::table::TriangleTable;
use crate::verdict::{Outcome, Verdict, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Per-row summary of a probe sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSummary {
    pub n: usize,
    pub depth_reached: usize,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified_from_depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub verdict: Outcome,
    pub violations: Vec<Violation>,
    pub checked_count: u64,
    pub not_applicable_count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<RowSummary>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl GridReport {
    pub fn new(command: impl Into<String>) -> Self {
        GridReport {
            command: command.into(),
            config: BTreeMap::new(),
            verdict: Outcome::NotApplicable,
            violations: Vec::new(),
            checked_count: 0,
            not_applicable_count: 0,
            rows: None,
            elapsed_ms: None,
        }
    }

    pub fn absorb(&mut self, verdict: Verdict) {
        self.checked_count += verdict.checked as u64;
        self.violations.extend(verdict.violations);
        self.refresh();
    }

    pub fn add_not_applicable(&mut self, count: u64) {
        self.not_applicable_count += count;
        self.refresh();
    }

    /// Keep only the first violation in report order.
    pub fn truncate_to_first(&mut self) {
        self.violations.truncate(1);
    }

    fn refresh(&mut self) {
        self.verdict = if !self.violations.is_empty() {
            Outcome::Violation
        } else if self.checked_count == 0 && self.not_applicable_count > 0 {
            Outcome::NotApplicable
        } else {
            Outcome::Pass
        };
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Outcome::Violation => 1,
            Outcome::Pass | Outcome::NotApplicable => 0,
        }
    }
}

pub fn emit_report<W: io::Write + ?Sized>(
    report: &GridReport,
    format: Format,
    out: &mut W,
) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, report)?;
            out.write_all(b"\n")
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(&mut *out);
            w.write_record(["n", "k", "depth", "lhs", "rhs", "claim"])?;
            for v in &report.violations {
                w.write_record([
                    v.n.map(|n| n.to_string()).unwrap_or_default(),
                    v.k.to_string(),
                    v.depth.map(|d| d.to_string()).unwrap_or_default(),
                    v.lhs.clone(),
                    v.rhs.clone(),
                    v.claim.clone(),
                ])?;
            }
            w.flush()
        }
        Format::Text => out.write_all(render_text(report).as_bytes()),
    }
}

fn render_text(report: &GridReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: {}", report.command);
    for (k, v) in &report.config {
        let _ = writeln!(s, "  {k} = {v}");
    }
    let _ = writeln!(s, "verdict: {}", report.verdict);
    let _ = writeln!(s, "checked: {}", report.checked_count);
    if report.not_applicable_count > 0 {
        let _ = writeln!(s, "not applicable: {}", report.not_applicable_count);
    }
    if let Some(rows) = &report.rows {
        for r in rows {
            let _ = write!(
                s,
                "  n={:<4} depth={:<4} {}",
                r.n, r.depth_reached, r.status
            );
            if let Some(c) = r.certified_from_depth {
                let _ = write!(s, " (certified from depth {c})");
            }
            s.push('\n');
        }
    }
    if !report.violations.is_empty() {
        let _ = writeln!(s, "violations: {}", report.violations.len());
        for v in &report.violations {
            let _ = writeln!(s, "  {v}");
        }
    }
    if let Some(ms) = report.elapsed_ms {
        let _ = writeln!(s, "elapsed: {ms} ms");
    }
    s
}

#[derive(Serialize)]
struct TableJson<'a> {
    kind: String,
    max_n: usize,
    rows: &'a [Vec<String>],
}

/// Write a triangle table. Csv rows are `n,v0,..,vn` after a header line.
pub fn emit_table<T: ExactInt, W: io::Write + ?Sized>(
    table: &TriangleTable<T>,
    format: Format,
    out: &mut W,
) -> io::Result<()> {
    let rows: Vec<Vec<String>> = table
        .rows()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect();
    match format {
        Format::Json => {
            let doc = TableJson {
                kind: table.kind().to_string(),
                max_n: table.max_n(),
                rows: &rows,
            };
            serde_json::to_writer(&mut *out, &doc)?;
            out.write_all(b"\n")
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(&mut *out);
            let mut header = vec!["n".to_string()];
            header.extend((0..=table.max_n()).map(|k| format!("k{k}")));
            w.write_record(&header)?;
            for (n, r) in rows.iter().enumerate() {
                let mut rec = vec![n.to_string()];
                rec.extend(r.iter().cloned());
                w.write_record(&rec)?;
            }
            w.flush()
        }
        Format::Text => {
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            let nw = table.max_n().to_string().len().max(3);
            let mut s = format!("{:>nw$}", format!("{}\\k", 'n'));
            for k in 0..=table.max_n() {
                let _ = write!(s, " {:>width$}", k);
            }
            s.push('\n');
            for (n, r) in rows.iter().enumerate() {
                let _ = write!(s, "{:>nw$}", n);
                for v in r {
                    let _ = write!(s, " {:>width$}", v);
                }
                s.push('\n');
            }
            out.write_all(s.as_bytes())
        }
    }
}
