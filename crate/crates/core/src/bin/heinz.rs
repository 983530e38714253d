use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = heinz::cli::run_from(std::env::args_os());
    let mut code = out.code;
    if std::io::stdout().write_all(out.stdout.as_bytes()).is_err() {
        code = heinz::cli::EXIT_USAGE;
    }
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(code as u8)
}
