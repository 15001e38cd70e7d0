use std::io::{stderr, stdin, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = amoh_cli::run(std::env::args_os(), &mut stdin().lock(), &mut stdout().lock(), &mut stderr());
    ExitCode::from(code as u8)
}
