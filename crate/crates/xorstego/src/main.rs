use std::process::ExitCode;

fn main() -> ExitCode {
    xorstego::cli::run()
}
