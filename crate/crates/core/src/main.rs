use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = semishift::cli::run(std::env::args_os());
    let text = outcome.output.as_bytes();
    let written = if outcome.code == 2 {
        std::io::stderr().write_all(text)
    } else {
        std::io::stdout().write_all(text)
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code as u8)
}
