use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let run = choiceform::run_cli(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(run.exit_code as u8)
}
