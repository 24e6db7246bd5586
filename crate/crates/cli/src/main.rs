fn main() {
    std::process::exit(ilink_cli::run(std::env::args_os()));
}
