use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(thermal_nav::cli::main_with_args(std::env::args_os()))
}
