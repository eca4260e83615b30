//! Command-line arguments and their validation into a [`RunConfig`].

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use clap::{Parser, ValueEnum};
use eulerlc_core::probe::MAX_PRECISION;
use eulerlc_core::{Convention, Format, ProbeMode, Property, Suite, TableKind};
use thiserror::Error;

/// Raised for arguments that parse but make no sense together; exit code 2.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Print the e- or d-table.
    Table,
    /// Check a concavity property on d-rows or on a sequence.
    Check,
    /// Iterate the L operator looking for a negative entry.
    Probe,
    /// Verify the inequalities and identities behind the concavity proofs.
    Verify,
    /// Compare the tables with brute-force permutation counts.
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Check => "check",
            Command::Probe => "probe",
            Command::Verify => "verify",
            Command::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    E,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Shrink,
    Pad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Certified,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Finite(usize),
    Unbounded,
}

fn parse_depth(s: &str) -> Result<Depth, String> {
    if s == "unbounded" {
        return Ok(Depth::Unbounded);
    }
    match s.parse::<usize>() {
        Ok(0) => Err("depth must be at least 1".into()),
        Ok(d) => Ok(Depth::Finite(d)),
        Err(_) => Err(format!(
            "expected a positive integer or 'unbounded', got '{s}'"
        )),
    }
}

fn parse_property(s: &str) -> Result<Property, String> {
    match s {
        "logconcave" => Ok(Property::LogConcave),
        "ultra" => Ok(Property::Ultra),
        "reverse-ultra" => Ok(Property::ReverseUltra),
        _ => match s.strip_prefix("llogconcave:").map(str::parse::<usize>) {
            Some(Ok(l)) if l >= 1 => Ok(Property::LLogConcave(l)),
            _ => Err(format!(
                "expected logconcave, llogconcave:<l> (l >= 1), ultra or reverse-ultra, got '{s}'"
            )),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteList(pub Vec<Suite>);

fn parse_suites(s: &str) -> Result<SuiteList, String> {
    if s == "all" {
        return Ok(SuiteList(Suite::ALL.to_vec()));
    }
    s.split(',')
        .map(|x| x.trim().parse::<Suite>())
        .collect::<Result<_, _>>()
        .map(SuiteList)
}

/// Every flag can also be set through an `EULERLC_*` environment variable;
/// the command line wins.
#[derive(Debug, Parser)]
#[command(
    name = "eulerlc",
    version,
    about = "Euler's difference table and higher-order log-concavity of its rows"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Largest row n.
    #[arg(long, env = "EULERLC_MAX_N")]
    pub max_n: Option<usize>,
    /// Smallest column k visited.
    #[arg(long, env = "EULERLC_K_LO")]
    pub k_lo: Option<usize>,
    /// Largest column k visited.
    #[arg(long, env = "EULERLC_K_HI")]
    pub k_hi: Option<usize>,
    /// Number of L iterations for probe, or 'unbounded'.
    #[arg(long, env = "EULERLC_DEPTH", default_value = "10", value_parser = parse_depth)]
    pub depth: Depth,
    #[arg(long, env = "EULERLC_CONVENTION", value_enum, default_value_t = ConventionArg::Shrink)]
    pub convention: ConventionArg,
    /// logconcave | llogconcave:<l> | ultra | reverse-ultra
    #[arg(long, env = "EULERLC_PROPERTY", default_value = "logconcave", value_parser = parse_property)]
    pub property: Property,
    /// bounds | substitutions | cubic | reverse-ultra | all, or a comma list.
    #[arg(long, env = "EULERLC_SUITE", default_value = "all", value_parser = parse_suites)]
    pub suite: SuiteList,
    #[arg(long, env = "EULERLC_KIND", value_enum, default_value_t = KindArg::D)]
    pub kind: KindArg,
    #[arg(long, env = "EULERLC_FORMAT", value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Keep only the first violation.
    #[arg(long, env = "EULERLC_FIRST")]
    pub first: bool,
    /// Visit every grid point, reporting those outside a claim's hypotheses as not applicable.
    #[arg(long, env = "EULERLC_FULL_GRID")]
    pub full_grid: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "EULERLC_THREADS")]
    pub threads: Option<usize>,
    /// Largest n the permutation oracle will enumerate.
    #[arg(long, env = "EULERLC_ORACLE_CAP", default_value_t = eulerlc_core::perm::DEFAULT_CAP)]
    pub oracle_cap: usize,
    /// Read a sequence (`index value` lines) from a file, or '-' for stdin.
    #[arg(long, env = "EULERLC_SEQ")]
    pub seq: Option<String>,
    /// Arithmetic used by probe.
    #[arg(long, env = "EULERLC_MODE", value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    /// Starting interval precision in bits for certified probing.
    #[arg(long, env = "EULERLC_PRECISION", default_value_t = 128)]
    pub precision: u32,
    /// Leave elapsed_ms out of the report.
    #[arg(long, env = "EULERLC_NO_TIMING")]
    pub no_timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub max_n: Option<usize>,
    pub k_range: Option<RangeInclusive<usize>>,
    /// `None` is unbounded.
    pub depth: Option<usize>,
    pub convention: Convention,
    pub property: Property,
    pub suites: Vec<Suite>,
    pub kind: TableKind,
    pub format: Format,
    pub first: bool,
    pub full_grid: bool,
    pub threads: usize,
    pub oracle_cap: usize,
    pub seq: Option<String>,
    pub mode: ProbeMode,
    pub timing: bool,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        let command = cli.command;
        let takes_seq = matches!(command, Command::Check | Command::Probe);
        if cli.seq.is_some() && !takes_seq {
            return usage(format!("--seq does not apply to {}", command.name()));
        }
        let max_n = match cli.max_n {
            Some(0) => return usage("--max-n must be a positive integer"),
            None if cli.seq.is_none() => return usage("--max-n is required"),
            m => m,
        };
        if cli.seq.is_some() && max_n.is_some() {
            return usage("--max-n and --seq are mutually exclusive");
        }
        let k_range = match (cli.k_lo, cli.k_hi) {
            (None, None) => None,
            (lo, hi) => {
                let lo = lo.unwrap_or(0);
                let hi = match (hi, max_n) {
                    (Some(h), _) => h,
                    (None, Some(m)) => m,
                    (None, None) => usize::MAX,
                };
                if lo > hi {
                    return usage(format!("--k-lo {lo} exceeds --k-hi {hi}"));
                }
                if let Some(m) = max_n.filter(|&m| hi > m) {
                    return usage(format!("--k-hi {hi} exceeds --max-n {m}"));
                }
                Some(lo..=hi)
            }
        };
        if k_range.is_some() && matches!(command, Command::Table | Command::Probe) {
            return usage(format!("--k-lo/--k-hi do not apply to {}", command.name()));
        }
        let convention = match cli.convention {
            ConventionArg::Shrink => Convention::Shrink,
            ConventionArg::Pad => Convention::ZeroPad,
        };
        let depth =
            match cli.depth {
                Depth::Finite(d) => Some(d),
                Depth::Unbounded if convention == Convention::ZeroPad => return usage(
                    "--depth unbounded needs --convention shrink (padded iterates never shrink)",
                ),
                Depth::Unbounded => None,
            };
        if cli.suite.0.is_empty() {
            return usage("--suite is empty");
        }
        if !(2..=MAX_PRECISION).contains(&cli.precision) {
            return usage(format!("--precision must be between 2 and {MAX_PRECISION}"));
        }
        let mode = match cli.mode {
            ModeArg::Exact => ProbeMode::Exact,
            ModeArg::Certified => ProbeMode::Certified {
                precision: cli.precision,
            },
            ModeArg::Auto => match ProbeMode::default() {
                ProbeMode::Auto {
                    exact_bit_limit, ..
                } => ProbeMode::Auto {
                    exact_bit_limit,
                    precision: cli.precision,
                },
                other => other,
            },
        };
        let threads = match cli.threads {
            Some(0) => return usage("--threads must be at least 1"),
            Some(t) => t,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        if command == Command::Oracle {
            if let Some(m) = max_n.filter(|&m| m > cli.oracle_cap) {
                return usage(format!(
                    "oracle enumerates all permutations; --max-n {m} exceeds --oracle-cap {}",
                    cli.oracle_cap
                ));
            }
        }
        Ok(RunConfig {
            command,
            max_n,
            k_range,
            depth,
            convention,
            property: cli.property,
            suites: cli.suite.0,
            kind: match cli.kind {
                KindArg::E => TableKind::E,
                KindArg::D => TableKind::D,
            },
            format: match cli.format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            },
            first: cli.first,
            full_grid: cli.full_grid,
            threads,
            oracle_cap: cli.oracle_cap,
            seq: cli.seq,
            mode,
            timing: !cli.no_timing,
        })
    }

    /// The settings that shape a report, echoed into it. Thread count and
    /// output format are left out so reports compare equal across them.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        if let Some(n) = self.max_n {
            put("max_n", n.to_string());
        }
        if let Some(s) = &self.seq {
            put("seq", s.clone());
        }
        if let Some(r) = &self.k_range {
            put("k_lo", r.start().to_string());
            put("k_hi", r.end().to_string());
        }
        put("full_grid", self.full_grid.to_string());
        put("first", self.first.to_string());
        match self.command {
            Command::Check => {
                put("property", self.property.to_string());
                put("convention", self.convention.to_string());
            }
            Command::Probe => {
                put(
                    "depth",
                    self.depth.map_or("unbounded".into(), |d| d.to_string()),
                );
                put("convention", self.convention.to_string());
                put(
                    "mode",
                    match self.mode {
                        ProbeMode::Exact => "exact".into(),
                        ProbeMode::Certified { precision } => format!("certified:{precision}"),
                        ProbeMode::Auto {
                            exact_bit_limit,
                            precision,
                        } => format!("auto:{exact_bit_limit}:{precision}"),
                    },
                );
            }
            Command::Verify => put(
                "suite",
                self.suites
                    .iter()
                    .map(|s| s.name())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            Command::Oracle => put("oracle_cap", self.oracle_cap.to_string()),
            Command::Table => {}
        }
        m
    }
}
