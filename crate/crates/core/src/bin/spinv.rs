fn main() {
    std::process::exit(spinv::cli::run(std::env::args_os()));
}
