fn main() {
    std::process::exit(lambda_qhr::cli::main_with_args(std::env::args_os()));
}
