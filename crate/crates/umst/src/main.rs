fn main() {
    std::process::exit(umst::cli::run(std::env::args_os()));
}
