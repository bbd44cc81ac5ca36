fn main() {
    std::process::exit(rankbreak::cli::run(std::env::args_os()));
}
