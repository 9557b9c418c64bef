fn main() {
    std::process::exit(beta_median::cli::run(std::env::args_os()));
}
