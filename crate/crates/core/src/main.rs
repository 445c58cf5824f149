fn main() {
    std::process::exit(fibword::cli::run(std::env::args_os()));
}
