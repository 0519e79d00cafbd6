fn main() {
    std::process::exit(woclct::cli::run_cli(std::env::args_os()));
}
