use std::process::ExitCode;

fn main() -> ExitCode {
    rhs_core::cli::main()
}
