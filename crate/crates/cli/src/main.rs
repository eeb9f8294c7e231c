fn main() {
    std::process::exit(qsvir_cli::main_with_args(std::env::args_os()));
}
