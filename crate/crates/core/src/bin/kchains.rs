fn main() {
    std::process::exit(kchains::cli::run(std::env::args_os()));
}
