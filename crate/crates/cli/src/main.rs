use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (outcome, stderr) = eccentra_cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    if !stderr.is_empty() {
        eprint!("{stderr}");
    }
    ExitCode::from(outcome.code as u8)
}
