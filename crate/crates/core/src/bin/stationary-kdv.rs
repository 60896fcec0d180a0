use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(stationary_kdv::cli::run(std::env::args_os()).code())
}
