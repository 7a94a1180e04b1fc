fn main() {
    std::process::exit(arratlas::cli::run_from_env());
}
