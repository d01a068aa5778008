use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(pstforge_cli::run(std::env::args_os(), &mut std::io::stdout().lock()))
}
