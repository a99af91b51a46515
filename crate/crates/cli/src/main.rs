fn main() {
    std::process::exit(aoc_cli::run(std::env::args_os()));
}
