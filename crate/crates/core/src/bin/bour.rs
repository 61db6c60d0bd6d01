fn main() {
    std::process::exit(bour_core::cli::run(std::env::args_os()));
}
