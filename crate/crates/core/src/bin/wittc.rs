fn main() {
    std::process::exit(witt_core::cli::main_with_args(std::env::args_os()));
}
