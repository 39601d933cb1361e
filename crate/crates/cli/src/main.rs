fn main() {
    std::process::exit(blindrank_cli::cli_main(std::env::args_os()));
}
