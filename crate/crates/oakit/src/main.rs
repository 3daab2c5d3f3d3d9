use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = oakit::commands::run(std::env::args_os());
    let text = outcome.text.as_bytes();
    let written = if outcome.class == oakit::ExitClass::Usage {
        std::io::stderr().write_all(text)
    } else {
        std::io::stdout().write_all(text)
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code())
}
