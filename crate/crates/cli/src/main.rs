fn main() {
    std::process::exit(boxjen_cli::run(std::env::args_os()));
}
