use std::process::ExitCode;

fn main() -> ExitCode {
    hookdist_cli::run()
}
