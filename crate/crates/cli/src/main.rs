fn main() {
    std::process::exit(rank1_cli::run(std::env::args_os()));
}
