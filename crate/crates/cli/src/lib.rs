//! The `eulerlc` command line, as a library so tests can drive it in-process.

pub mod config;
pub mod input;
mod run;

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::Parser;

pub use config::{Cli, Command, RunConfig, UsageError};
pub use input::{read_sequence, InputError};
pub use run::run;

/// Parse `args` (including the program name) and run. Help and version go
/// to `out` with exit code 0; argument errors go to `err` with exit code 2.
pub fn main_with<I, A>(
    args: I,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(config) => run(&config, stdin, out, err),
        Err(e) => {
            let _ = writeln!(err, "eulerlc: error: {e}");
            2
        }
    }
}
