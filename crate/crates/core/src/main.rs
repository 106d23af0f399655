fn main() {
    std::process::exit(pwrot::cli::main_with_args(std::env::args_os()));
}
