fn main() {
    std::process::exit(dejean::cli::run(std::env::args_os()));
}
