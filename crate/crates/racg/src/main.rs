use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cap = std::env::var_os(racg::cli::RIGID_CAP_VAR);
    let code = racg::cli::run(std::env::args_os(), cap, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
