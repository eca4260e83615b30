use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::time::Instant;

use eulerlc_core::concavity::check_property_within;
use eulerlc_core::sweep::{probe_verdict, sweep_oracle, sweep_probe, sweep_property, sweep_verify};
use eulerlc_core::{
    build_d, build_e, emit_report, emit_table, probe, BigInt, BuildMethod, Grid, GridReport,
    IntSequence, ProbeOptions, SweepError, TableError, TableKind,
};
use thiserror::Error;

use crate::config::{Command, RunConfig, UsageError};
use crate::input::{read_sequence, InputError};

#[derive(Debug, Error)]
enum RunError {
    #[error(transparent)]
    Usage(#[from] UsageError),
    #[error("{0}")]
    Input(#[from] InputError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Execute a validated configuration. Returns the process exit code:
/// 0 when every check passed or none applied, 1 on a violation, 2 on a
/// usage or input error.
pub fn run(
    config: &RunConfig,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    match execute(config, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "eulerlc: error: {e}");
            2
        }
    }
}

fn execute(
    config: &RunConfig,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, RunError> {
    let started = Instant::now();
    let seq = match &config.seq {
        None => None,
        Some(path) if path == "-" => Some(read_sequence(stdin)?),
        Some(path) => {
            let file =
                File::open(path).map_err(|e| UsageError(format!("cannot open {path}: {e}")))?;
            Some(read_sequence(BufReader::new(file))?)
        }
    };
    let mut report = match (config.command, seq) {
        (Command::Table, _) => {
            let max_n = config.max_n.expect("validated");
            match config.kind {
                TableKind::E => emit_table(&build_e::<BigInt>(max_n), config.format, out)?,
                TableKind::D => emit_table(
                    &build_d::<BigInt>(max_n, BuildMethod::FromE)?,
                    config.format,
                    out,
                )?,
            }
            return Ok(0);
        }
        (Command::Check, Some(seq)) => check_sequence(config, &seq)?,
        (Command::Probe, Some(seq)) => probe_sequence(config, &seq),
        (command, _) => sweep(config, command, err)?,
    };
    report.config = config.echo();
    if config.first {
        report.truncate_to_first();
    }
    if config.timing {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    emit_report(&report, config.format, out)?;
    out.flush()?;
    Ok(report.exit_code())
}

fn check_sequence(config: &RunConfig, seq: &IntSequence) -> Result<GridReport, RunError> {
    let window = config
        .k_range
        .as_ref()
        .map(|r| *r.start() as i64..=(*r.end()).min(i64::MAX as usize) as i64);
    let verdict = check_property_within(seq, config.property, config.convention, window.as_ref())
        .map_err(|e| UsageError(e.to_string()))?;
    let mut report = GridReport::new("check");
    report.absorb(verdict);
    Ok(report)
}

fn probe_options(config: &RunConfig) -> ProbeOptions {
    ProbeOptions {
        mode: config.mode,
        ..ProbeOptions::new(config.depth, config.convention)
    }
}

fn probe_sequence(config: &RunConfig, seq: &IntSequence) -> GridReport {
    let r = probe(seq, &probe_options(config));
    let mut report = GridReport::new("probe");
    report.absorb(probe_verdict(&r).0);
    report
}

fn sweep(
    config: &RunConfig,
    command: Command,
    err: &mut dyn Write,
) -> Result<GridReport, RunError> {
    let max_n = config.max_n.expect("validated");
    // verify reads the ratio d(n+1,k)/d(n,k), so it needs one extra row.
    let rows = if command == Command::Verify {
        max_n + 1
    } else {
        max_n
    };
    let _ = writeln!(err, "eulerlc: building d-table to row {rows}");
    let d = build_d::<BigInt>(rows, BuildMethod::FromE)?;
    let first_row = match command {
        // L-iterates of rows below 4 are covered by --full-grid only.
        Command::Probe if !config.full_grid => 4.min(max_n),
        _ => 0,
    };
    let grid = Grid {
        n: first_row..=max_n,
        k: config.k_range.clone(),
        full: config.full_grid,
    };
    let _ = writeln!(
        err,
        "eulerlc: {} over rows {first_row}..={max_n} on {} threads",
        command.name(),
        config.threads
    );
    let report = match command {
        Command::Check => sweep_property(
            &d,
            config.property,
            config.convention,
            &grid,
            config.threads,
        )?,
        Command::Probe => sweep_probe(&d, &probe_options(config), &grid, config.threads)?,
        Command::Verify => sweep_verify(&d, &config.suites, &grid, config.threads)?,
        Command::Oracle => sweep_oracle(&d, &grid, config.oracle_cap, config.threads)?,
        Command::Table => unreachable!(),
    };
    Ok(report)
}
