fn main() {
    std::process::exit(quantum_gkz::cli::main_with_args(std::env::args_os()));
}
