fn main() {
    std::process::exit(dn2_cli::main_with_args(std::env::args_os()));
}
