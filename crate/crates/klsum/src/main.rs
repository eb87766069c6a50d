use std::process::ExitCode;

fn main() -> ExitCode {
    klsum::cli::run()
}
