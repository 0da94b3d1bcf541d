fn main() {
    std::process::exit(coherent_wavelets::cli::main_with_args(std::env::args_os()));
}
