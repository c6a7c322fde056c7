use std::process::ExitCode;

fn main() -> ExitCode {
    let code = qkrep_cli::run(std::env::args_os(), std::io::stdout().lock());
    ExitCode::from(code as u8)
}
