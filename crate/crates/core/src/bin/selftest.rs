fn main() {
    std::process::exit(selftest::cli::main_with_args(std::env::args_os()));
}
