fn main() {
    std::process::exit(geninv::cli::main_with_args(std::env::args_os()));
}
