fn main() {
    std::process::exit(delaycomp_cli::main_with_args(std::env::args_os()));
}
