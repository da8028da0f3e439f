fn main() {
    std::process::exit(igwave::cli::run(std::env::args_os()));
}
