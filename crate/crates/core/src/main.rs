fn main() {
    std::process::exit(rcqm::cli::run(std::env::args_os()));
}
