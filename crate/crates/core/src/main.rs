fn main() {
    std::process::exit(bqtop_core::cli::run(std::env::args_os()));
}
