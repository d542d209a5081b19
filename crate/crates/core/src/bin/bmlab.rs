fn main() {
    std::process::exit(bmlab::cli::main_with_args(std::env::args_os()));
}
