use std::process::ExitCode;

fn main() -> ExitCode {
    saberpro_cart::cli::run(std::env::args_os())
}
