fn main() {
    std::process::exit(syzygy_cli::main_with_args(std::env::args_os()));
}
