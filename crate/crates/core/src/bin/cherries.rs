use std::process::ExitCode;

fn main() -> ExitCode {
    cherries::cli::run(std::env::args_os())
}
