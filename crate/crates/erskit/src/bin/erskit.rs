fn main() {
    std::process::exit(erskit::cli::main_with(std::env::args_os()));
}
