fn main() {
    std::process::exit(nilcone_cli::run(std::env::args_os()));
}
