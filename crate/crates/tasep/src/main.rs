use std::process::ExitCode;

fn main() -> ExitCode {
    tasep::cli::run()
}
