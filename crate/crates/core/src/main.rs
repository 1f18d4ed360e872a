fn main() {
    std::process::exit(specspace::cli::run(std::env::args_os()));
}
