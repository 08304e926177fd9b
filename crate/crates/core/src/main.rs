fn main() {
    std::process::exit(letq::cli::run(std::env::args_os()));
}
