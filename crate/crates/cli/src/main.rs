use std::io::{self, BufWriter};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut err = io::stderr();
    let code = eulerlc_cli::main_with(std::env::args_os(), &mut input, &mut out, &mut err);
    drop(out);
    ExitCode::from(code as u8)
}
