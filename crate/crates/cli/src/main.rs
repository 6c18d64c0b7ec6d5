use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(wphodge_cli::run(std::env::args_os()))
}
