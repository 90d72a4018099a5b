use std::process::ExitCode;

fn main() -> ExitCode {
    sasjoin::cli::main_entry()
}
