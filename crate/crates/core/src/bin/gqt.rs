fn main() {
    std::process::exit(gqt::cli::run(std::env::args_os()));
}
