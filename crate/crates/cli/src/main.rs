fn main() {
    std::process::exit(sublat_cli::run_cli(std::env::args_os()));
}
